"""
Services module - solvers, drivers and the scenario runner.

Each service is a set of plain functions over the immutable records in app.models.
"""
