"""Settings and the exception tree"""
