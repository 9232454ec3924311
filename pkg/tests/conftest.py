"""Shared corpus helpers, cached for the whole test session."""

import functools

from dconf import (build_field, cellular_complex, enumerate_cells, homology,
                   morse_boundary, skeleton_complex)


@functools.lru_cache(maxsize=None)
def skeleton_table(m, d, n=2):
    return enumerate_cells(skeleton_complex(m, d), n)


@functools.lru_cache(maxsize=None)
def skeleton_field(m, d, n=2):
    return build_field(skeleton_table(m, d, n))


@functools.lru_cache(maxsize=None)
def skeleton_morse(m, d, n=2):
    return morse_boundary(skeleton_field(m, d, n))


@functools.lru_cache(maxsize=None)
def cellular_homology(m, d, n=2):
    return homology(cellular_complex(skeleton_table(m, d, n)))


@functools.lru_cache(maxsize=None)
def morse_homology(m, d, n=2):
    return homology(skeleton_morse(m, d, n).to_chain_complex())
