"""Shared helpers: model sampling and the dense-grid transform oracle."""

import numpy as np

from fdlp.dsp import AllPoleModel


def step_up(reflections):
    """Lattice-to-direct conversion; inverse of the Levinson recursion."""
    a = np.zeros(0)
    for k in reflections:
        a = np.concatenate([a - k * a[::-1], [k]])
    return a


def random_stable_model(rng, order, max_radius=0.97):
    """Random stable all-pole model of the given order.

    Reflection coefficients are uniform in (-0.9, 0.9) with their absolute
    sum capped (keeps coefficients O(1) at high orders); the pole radius is
    then capped by the z -> z/g substitution so a 2^16-point grid resolves
    the spectrum to well below 1e-6.
    """
    k = rng.uniform(-0.9, 0.9, order)
    total = np.sum(np.abs(k))
    if total > 8.0:
        k *= 8.0 / total
    alpha = step_up(k)
    radius = np.max(np.abs(np.roots(np.concatenate([[1.0], -alpha]))))
    if radius > max_radius:
        shrink = max_radius / radius
        alpha = alpha * shrink ** np.arange(1, order + 1)
    return AllPoleModel(
        gain=float(np.exp(rng.uniform(-2.0, 2.0))), coefficients=alpha, order=order
    )


def modulation_oracle(model, n_coeffs, n_grid=1 << 16):
    """Modulation coefficients via the dense-grid inverse transform of log F.

    Independent of the recursion under test: evaluates the power response on
    a dense circle, takes the inverse real FFT, and halves the DC term (the
    log response weighs every coefficient twice except DC).
    """
    poly = np.concatenate([[1.0], -model.coefficients])
    spectrum = np.fft.rfft(poly, n=n_grid)
    log_response = 2.0 * np.log(model.gain) - 2.0 * np.log(np.abs(spectrum))
    coeffs = np.fft.irfft(log_response, n=n_grid)[:n_coeffs].copy()
    coeffs[0] /= 2.0
    return coeffs
