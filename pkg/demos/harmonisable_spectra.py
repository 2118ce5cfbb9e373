"""
Periodic and almost periodic harmonisable covariation
=====================================================

A harmonisable process with discrete spectrum has covariation function
C(s, t) = sum_jk F_jk exp(i (s l_j - t l_k)). Off-diagonal mass of the
bimeasure makes C depend on s and t separately and produces spectral lines at
the frequency differences.
"""

import numpy as np

import stable_spectra as ss

alpha = 1.5

stationary = ss.HarmonisableModel.from_matrix([0.0, 2.0], np.eye(2), alpha)
lattice_F = np.eye(3)
lattice_F[0, 2] = lattice_F[2, 0] = 0.5
lattice = ss.HarmonisableModel.from_matrix([0.0, 1.0, 2.0], lattice_F, alpha)
irr_F = np.eye(3)
irr_F[1, 0], irr_F[2, 0] = 0.4, 0.5
irrational = ss.HarmonisableModel.from_matrix([0.0, 1.0, np.sqrt(2)], irr_F, alpha)

for name, model in [("stationary", stationary), ("lattice", lattice),
                    ("irrational", irrational)]:
    rep = ss.classify(model)
    print(f"{name:10s} {rep.verdict:15s} T = {rep.period}  lines = {rep.gammas}")

# %%
# For the periodic model the Fourier coefficients of t -> C(t + tau, t)
# computed by quadrature agree with the line masses.
T = ss.classify(lattice).period
for k in range(-2, 3):
    rec = ss.fourier_coefficient(lattice, 0.0, k, T)
    print(f"k = {k:+d}  numeric {rec.numeric:.6f}  predicted {rec.predicted:.6f}")

# %%
# Time averages over [-M, M] converge to the line sum at rate 1/M.
for M in [10, 100, 1000]:
    print(f"M = {M:5d}  Bohr average at gamma = 1: "
          f"{ss.bohr_coefficient(irrational, 0.0, 1.0, M):.6f}")

# %%
# Sample paths from an increment law with independent increments.
law = ss.IncrementLaw([0.0, 2.0], ss.make_axes_measure([0.5, 0.5]), alpha)
model = ss.HarmonisableModel.from_increments(law)
paths = ss.synthesize_paths(model, np.linspace(0, 3, 4), 5, seed=0)
print(np.round(paths, 3))
