"""Exact construction and certification of hypergeometric Belyi maps."""

from hpgbelyi.belyi import BelyiMap, certify, enumerate_maps, rescale
from hpgbelyi.exact import PolyExact, QuadExt
from hpgbelyi.hypergeom import HpgSpec, hpg_poly

__all__ = [
    "BelyiMap",
    "HpgSpec",
    "PolyExact",
    "QuadExt",
    "certify",
    "enumerate_maps",
    "hpg_poly",
    "rescale",
]
