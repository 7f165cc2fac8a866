"""
Core layer: entities, interfaces, errors, settings and logging.
"""
