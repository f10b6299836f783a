"""
Init file for tests, blank to avoid automatic imports.
"""
