"""Josephson junction Hamiltonian in Fock, lattice, branch, Z x Z and two-torus form.

Submodules
----------
indexing   basis labels, maps between representations, sector enumeration
opalg      sparse operators, the six Hamiltonian constructors, equivalence checks
fibers     fixed-total-number tridiagonal blocks and the assembled spectrum
currents   Josephson current (three constructions), Fraunhofer integral
mathieu    the even fibers as truncated Mathieu problems
phase_ops  Galindo-type phase operator on the number basis
cli        command-line front end
"""
from .indexing import Rep, SectorBasis, enumerate_sector
from .params import ModelParams
from .report import VerifyReport
from .tridiag import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "ModelParams", "Rep", "SectorBasis", "VerifyReport", "enumerate_sector"]
