from __future__ import annotations

from magnus.autfn import compose_endos, endo_inverse, is_identity_endo
from magnus.sampling import random_endo, random_semidirect, trial_rng


def test_random_endos_mix_both_libraries(rng):
    labels = [random_endo(rng, 3, 3).label for _ in range(300)]
    assert any("K[" in label for label in labels)
    assert any("P[" in label for label in labels)


def test_random_endos_carry_inverses(rng):
    for _ in range(20):
        phi = random_endo(rng, 3, 3)
        assert is_identity_endo(compose_endos(phi, endo_inverse(phi)))


def test_single_library():
    rng = trial_rng(0, "magnus-K only", 0)
    labels = [random_endo(rng, 3, 2, kinds=("magnus-K",)).label for _ in range(50)]
    assert all("P[" not in label for label in labels)


def test_trial_rng_is_reproducible():
    a = random_semidirect(trial_rng(7, "k0-relation", 3), 3, 5)
    b = random_semidirect(trial_rng(7, "k0-relation", 3), 3, 5)
    assert a == b
