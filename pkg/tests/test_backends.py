import itertools
import json
import os
import random
import subprocess
import sys
from fractions import Fraction

import pytest

import flagflux
import flagflux._pyforms as pure

fast = pytest.importorskip(
    "flagflux._fastforms", reason="compiled kernel not built"
)


def random_terms(rng, degree, max_index=9, max_terms=5):
    keys = list(itertools.combinations(range(1, max_index + 1), degree))
    rng.shuffle(keys)
    out = {}
    for key in keys[: rng.randint(0, max_terms)]:
        c = rng.choice(
            [rng.randint(-7, -1), rng.randint(1, 7), Fraction(rng.randint(1, 5), rng.randint(2, 5))]
        )
        out[key] = c
    return out


def random_diffs(rng, dim):
    # strict filtration: slot k may reference only indices below k
    diffs = []
    for k in range(1, dim + 1):
        if k <= 2 or rng.random() < 0.4:
            diffs.append({})
        else:
            diffs.append(random_terms(rng, 2, max_index=k - 1, max_terms=3))
    return diffs


class TestBackendTags:
    def test_pure_tag(self):
        assert pure.BACKEND == "pure"

    def test_compiled_tag(self):
        assert fast.BACKEND == "compiled"

    def test_package_prefers_compiled(self):
        assert flagflux.BACKEND == "compiled"


class TestParity:
    def test_merge_indices(self):
        rng = random.Random(1)
        for _ in range(300):
            da = rng.randint(0, 4)
            db = rng.randint(0, 4)
            left = tuple(sorted(rng.sample(range(1, 10), da)))
            right = tuple(sorted(rng.sample(range(1, 10), db)))
            assert pure.merge_indices(left, right) == fast.merge_indices(left, right)

    def test_add_terms(self):
        rng = random.Random(2)
        for _ in range(200):
            d = rng.randint(1, 4)
            a = random_terms(rng, d)
            b = random_terms(rng, d)
            assert pure.add_terms(a, b) == fast.add_terms(a, b)

    def test_scale_terms(self):
        rng = random.Random(3)
        for _ in range(200):
            a = random_terms(rng, rng.randint(1, 4))
            c = rng.choice([0, 2, -3, Fraction(1, 2), Fraction(-5, 3)])
            assert pure.scale_terms(a, c) == fast.scale_terms(a, c)

    def test_wedge_terms(self):
        rng = random.Random(4)
        for _ in range(200):
            a = random_terms(rng, rng.randint(1, 3))
            b = random_terms(rng, rng.randint(1, 3))
            assert pure.wedge_terms(a, b) == fast.wedge_terms(a, b)

    def test_interior_terms(self):
        rng = random.Random(5)
        for _ in range(200):
            a = random_terms(rng, rng.randint(1, 4))
            x = rng.randint(1, 9)
            assert pure.interior_terms(x, a) == fast.interior_terms(x, a)

    def test_ce_terms(self):
        rng = random.Random(6)
        for _ in range(150):
            dim = rng.randint(3, 8)
            diffs = random_diffs(rng, dim)
            a = random_terms(rng, rng.randint(1, 3), max_index=dim)
            assert pure.ce_terms(diffs, a) == fast.ce_terms(diffs, a)

    def test_exact_rationals_survive(self):
        a = {(1, 2): Fraction(1, 3)}
        b = {(3,): Fraction(3, 1)}
        got = fast.wedge_terms(a, b)
        assert got == {(1, 2, 3): 1}
        assert isinstance(list(got.values())[0], int)


class TestForcedPure:
    def run_cli(self, env_extra):
        env = dict(os.environ, **env_extra)
        return subprocess.run(
            [sys.executable, "-m", "flagflux.cli", "dualize", "--rank", "2", "--ideal", "3"],
            capture_output=True,
            text=True,
            env=env,
        )

    def test_env_var_selects_pure(self):
        out = subprocess.run(
            [sys.executable, "-c", "import flagflux; print(flagflux.BACKEND)"],
            capture_output=True,
            text=True,
            env=dict(os.environ, FLAGFLUX_PURE="1"),
        )
        assert out.stdout.strip() == "pure"

    def test_reports_agree_across_backends(self):
        compiled = self.run_cli({})
        forced = self.run_cli({"FLAGFLUX_PURE": "1"})
        assert compiled.returncode == forced.returncode == 0
        assert compiled.stdout == forced.stdout
        assert json.loads(forced.stdout)["H_dual"] == "-e^{123}"
