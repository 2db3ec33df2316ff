import numpy as np

from cliffspec.rng import SplitMix64, random_params, random_points, random_triple


def test_reference_stream():
    # published SplitMix64 outputs for seed 0
    g = SplitMix64(0)
    assert [g.next_u64() for _ in range(3)] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_uniform_range_and_determinism():
    a = SplitMix64(42).uniforms(10_000, -5, 5)
    b = SplitMix64(42).uniforms(10_000, -5, 5)
    np.testing.assert_array_equal(a, b)
    assert a.min() >= -5 and a.max() < 5
    assert abs(a.mean()) < 0.2


def test_split_streams_differ():
    g = SplitMix64(1)
    c1, c2 = g.split(), g.split()
    assert c1.next_u64() != c2.next_u64()


def test_random_instances_in_range():
    g = SplitMix64(3)
    for _ in range(100):
        p = random_params(g)
        vals = np.concatenate([p.center, p.a, [p.alpha2.real, p.alpha2.imag,
                                               p.alpha3.real, p.alpha3.imag]])
        assert np.all(np.abs(vals) <= 5)
        t = random_triple(g)
        for M in t.matrices:
            np.testing.assert_array_equal(M, M.conj().T)
            assert np.abs(M.real).max() <= 5 and np.abs(M.imag).max() <= 5
    pts = random_points(g, 1000)
    assert pts.shape == (1000, 3) and np.abs(pts).max() <= 10
