"""
Models module - immutable domain records shared by the services.

Difference from schemas:
- Models: numerical objects (profiles, states, fans, grids, wind fields)
- Schemas: the scenario document and API contract
"""
