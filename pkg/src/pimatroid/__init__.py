"""Matroid membership-oracle toolkit: Pi-matroids, exact-basis lower bounds, MOL reductions and a knapsack-cover EPTAS."""

from .emb import EmbInstance, EmiInstance, adversary_game, brute_force_emb, brute_force_emi
from .errors import MatroidToolkitError
from .kcm import KcmInstance, kcmb_eptas
from .matroids import (
    CountingOracle, ExplicitMatroid, PartitionMatroid, UniformMatroid, rank, truncate, verify_matroid_axioms,
)
from .mol import MolParams, decide_emb_via_mol, reduce_emb_to_mol
from .pi import EmptyFamily, ExplicitFamily, PiMatroid, SatInstance, SingletonFamily, choose_hard_parameters

__version__ = "0.1.0"
