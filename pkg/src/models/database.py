"""
Database models for the optional run registry.
"""

import uuid
from typing import Generator

import sqlalchemy as sa
from sqlalchemy import create_engine, Column, String, Text, DateTime, Float, JSON
from sqlalchemy.orm import declarative_base, sessionmaker, Session

Base = declarative_base()


class RunModel(Base):
    """One CLI or library run and its resolved configuration"""
    __tablename__ = "runs"

    id = Column(String, primary_key=True, default=lambda: str(uuid.uuid4()))
    command = Column(String, nullable=False)
    status = Column(String, default="pending")
    progress = Column(Float, default=0.0)
    message = Column(Text)
    config = Column(JSON)
    result = Column(JSON)
    output_path = Column(String)
    created_at = Column(DateTime, default=sa.func.now())
    completed_at = Column(DateTime)


class RunDatabase:
    """Engine and session factory bound to one database URL"""

    def __init__(self, database_url: str):
        self.database_url = database_url
        self.engine = create_engine(database_url)
        self.session_factory = sessionmaker(autocommit=False, autoflush=False, bind=self.engine)
        Base.metadata.create_all(bind=self.engine)

    def get_db(self) -> Generator[Session, None, None]:
        """Get database session"""
        db = self.session_factory()
        try:
            yield db
        finally:
            db.close()

    def dispose(self):
        self.engine.dispose()
