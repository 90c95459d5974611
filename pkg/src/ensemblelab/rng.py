"""Seeded random-stream construction.

Every piece of randomness in the package derives from a single 64-bit master
seed through numpy ``SeedSequence`` spawn keys, so a whole experiment is a
pure function of that seed.  Each consumer gets its own PCG64 stream,
identified by a purpose code plus an index: drawing more bootstrap samples
never perturbs the label draws, adding a classifier never perturbs the
design, and so on.
"""

from __future__ import annotations

import numpy as np

# Purpose codes.  Frozen: changing any value changes every seeded run.
DESIGN = 1      # design-point layout (LHS permutations, iid uniforms)
LABELS = 2      # label draws and noise flips
DIRECTIONS = 3  # unit directions for neighbor holdouts
BOOTSTRAP = 4   # per-tree bootstrap row draws
TREE = 5        # per-node feature subsets inside one tree fit
HOLDOUT = 6     # holdout evaluation points
FOLDS = 7       # cross-validation fold assignment
REPLICATE = 8   # per-repetition master seeds in repeated experiments


def stream(master_seed: int, purpose: int, index: int = 0) -> np.random.Generator:
    """PCG64 generator for one (purpose, index) slot under a master seed."""
    seq = np.random.SeedSequence(entropy=int(master_seed), spawn_key=(purpose, index))
    return np.random.Generator(np.random.PCG64(seq))


def derive_seed(master_seed: int, purpose: int, index: int = 0) -> int:
    """A 64-bit child seed for configs that carry their own seed field."""
    seq = np.random.SeedSequence(entropy=int(master_seed), spawn_key=(purpose, index))
    return int(seq.generate_state(1, dtype=np.uint64)[0])
