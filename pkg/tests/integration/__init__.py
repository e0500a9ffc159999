"""
Integration tests for smod verification campaigns
"""
