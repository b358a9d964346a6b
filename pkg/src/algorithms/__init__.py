"""Numerical core: graphs, metric learning, clustering"""
