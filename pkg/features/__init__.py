"""
Features package — one sub-package per concern of Möbius photogrammetry.

  geometry        directions, the conic model of S², classification, fits
  moduli          M₅ ⊂ P⁵: the embedding φ, its quadrics and lines L_ij
  camera          camera evaluation, image sampling, exact image degree
  reconstruction  configurations from cameras, n-point equivalence
  pentapod        necessary conditions for pods of mobility ≥ 2
  steps           the tracked step chain of a command run

Each sub-package re-exports its public API from `__init__.py` and keeps its
data models in `models.py`.
"""
