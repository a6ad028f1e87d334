"""
Schemas module - pydantic shapes at the edges of the package.

- Scenario documents (what a config file or upload must contain)
- Run manifests (what a finished run writes next to its snapshots)
- API responses
"""
