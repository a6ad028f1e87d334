"""
gfshock - Godunov schemes built on nonlinear generalized functions.

Architecture:
- gf_lab: regularized Heaviside/Dirac families, the oracle for every jump condition
- jump: Rankine-Hugoniot, mean-value association and integral jump conditions
- riemann: Burgers, k^2-model, fractional-step Euler and elastoplastic fans
- godunov: grids, CFL control, projection step and splitting drivers
- hurricane: semi-Lagrangian wind-field integrator
- cli / api: scenario-driven front ends
"""

__version__ = "1.0.0"
