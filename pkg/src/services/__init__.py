"""Pipeline orchestration, evaluation and the synthetic benchmark"""
