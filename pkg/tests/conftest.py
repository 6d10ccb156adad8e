import numpy as np
import pytest

from vegaineq import GeneratorSpec, Sample, generate


def random_positive_sample(seed: int, max_n: int = 200) -> Sample:
    """A seeded strictly positive sample with a randomly chosen family."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, max_n + 1))
    family = rng.choice(["lognormal", "pareto", "uniform"])
    if family == "lognormal":
        spec = GeneratorSpec("lognormal", n=n, seed=seed, mu=0.0, sigma=1.0)
    elif family == "pareto":
        spec = GeneratorSpec("pareto", n=n, seed=seed, alpha=2.5, x_min=1.0)
    else:
        spec = GeneratorSpec("uniform", n=n, seed=seed, lo=0.5, hi=9.5)
    return generate(spec)


def random_nonnegative_sample(seed: int, max_n: int = 200) -> Sample:
    """Like random_positive_sample but with a sprinkle of exact zeros."""
    s = random_positive_sample(seed, max_n)
    rng = np.random.default_rng(seed + 1)
    values = s.values.copy()
    zero_mask = rng.random(values.size) < 0.1
    # keep the zero share under one half so the mean stays positive
    if zero_mask.mean() < 0.5:
        values[zero_mask] = 0.0
    return Sample(values)


@pytest.fixture
def tiny_csv(tmp_path):
    path = tmp_path / "tiny.csv"
    path.write_text("income,region\n1,north\n2,north\n3,south\n5,south\n10,south\n")
    return path
