"""Smoke test for the cohstate extension module."""

import cmath
import math

import cohstate


def main():
    spt = cohstate.Potential.spt(2.0)
    assert spt.name == "spt"
    assert spt.energy(3) == 25.0

    state = cohstate.spt_cs(10.0, 2.0, 20, numeric=True, check_truncation=False)
    assert len(state) == 21
    assert abs(state.norm_sq() - 1.0) < 1e-12
    assert abs(sum(state.weights()) - 1.0) < 1e-12

    a = cohstate.autocorrelation(state, spt, [0.0, math.pi, 2 * math.pi])
    assert abs(a[0] - 1) < 1e-14
    assert abs(abs(a[2]) - 1) < 1e-12

    marks = cohstate.revivals(state, spt, [k * 2 * math.pi / 256 for k in range(257)])
    assert any(kind == "full" and abs(t - 2 * math.pi) < 1e-9 for t, _, kind in marks)

    density, norms = cohstate.evolve(state, spt, [-0.5, 0.0, 0.5], [0.0, 1.0])
    assert len(density) == 3 and len(density[0]) == 2
    assert all(abs(n - 1) < 1e-6 for n in norms)

    morse = cohstate.morse_cs(1.5, 3.0, 80)
    for x in (0.5, 2.0, 10.0):
        assert abs(morse.eval(x) - morse.closed_form(x)) < 1e-9

    chg = cohstate.chg_cs(complex(1.0, 0.5), 2.5, 60)
    assert chg.eigen_residual() < 1e-10

    pt = cohstate.pt_cs(10.0, 2.0, 6.0, 20, check_truncation=False)
    try:
        pt.closed_form(0.3)
    except NotImplementedError:
        pass
    else:
        raise AssertionError("PT closed form should be unavailable")

    try:
        cohstate.chg_cs(1.0, -3.0, 10)
    except ValueError:
        pass
    else:
        raise AssertionError("b = -3 should be rejected")

    assert cohstate.su11_confluent_residual(2.5) <= 1e-12
    assert cohstate.su11_laguerre_residual(3.0) <= 1e-12
    assert cohstate.heisenberg_weyl_residual(2.5) <= 1e-12
    assert abs(cohstate.spt_norm_sum(5.0, 2.0) / cohstate.spt_norm_integral(5.0, 2.0) - 1) < 1e-8

    c = cohstate.confluent_series(2.0, 3.0, 5)
    assert cmath.isclose(c[2], 4.0 / (2 * 3 * 4), rel_tol=1e-14)

    print("smoke test passed")


if __name__ == "__main__":
    main()
