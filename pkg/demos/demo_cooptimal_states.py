#!/usr/bin/env python3
"""Concurrence-optimal pairs of real two-qubit states.

A pair of real pure states is co-optimal when mixing them loses no
concurrence.  Whether a state is co-optimal with cos(t)|00> + sin(t)|11>
turns out to be exactly the question of whether a related 2x2 matrix has a
positive determinant and real eigenvalues, so the pair fraction inherits the
closed forms: 1/sqrt(2) - 1/2 against a maximally entangled partner, and
(pi - 2)/4 averaged over independent uniform pairs.
"""

import math

import numpy as np

from ginprod import entanglement as ent

BELL = np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2.0)

print("Concurrence of reference states:")
print(f"  Bell (|00>+|11>)/sqrt(2):        {ent.concurrence(BELL):.6f}")
print(f"  product state |00>:              {ent.concurrence([1.0, 0.0, 0.0, 0.0]):.6f}")
theta = math.pi / 8
print(f"  cos(pi/8)|00> + sin(pi/8)|11>:   {ent.concurrence(ent.schmidt_state(theta)):.6f}"
      f"   (sin(pi/4) = {math.sin(math.pi / 4):.6f})")

print()
print("Co-optimality examples against the Bell state:")
v_pos = np.array([2.0, 0.0, 0.0, 1.0]) / math.sqrt(5.0)
v_rot = np.array([0.0, -1.0, 1.0, 0.0]) / math.sqrt(2.0)
print(f"  amplitudes of [[2,0],[0,1]]/sqrt(5)  -> {ent.co_optimal_pair(BELL, v_pos)}"
      "   (positive det, real eigenvalues)")
print(f"  amplitudes of [[0,-1],[1,0]]/sqrt(2) -> {ent.co_optimal_pair(BELL, v_rot)}"
      "  (rotation: complex eigenvalues)")

print()
TRIALS = 20_000
f, se = ent.fraction_cooptimal_theta(math.pi / 4, TRIALS, master_seed=4)
target = 1 / math.sqrt(2) - 0.5
print(f"Fraction co-optimal with a maximally entangled state ({TRIALS} trials):")
print(f"  measured {f:.4f} +/- {se:.4f}   exact 1/sqrt(2) - 1/2 = {target:.4f}")

f, se = ent.fraction_cooptimal_pairs(TRIALS, master_seed=5)
print(f"Fraction of co-optimal pairs among independent uniform states:")
print(f"  measured {f:.4f} +/- {se:.4f}   exact (pi - 2)/4 = {(math.pi - 2) / 4:.4f}")

f, se = ent.fraction_cooptimal_staged(TRIALS, master_seed=6)
print(f"  two-stage estimator (Schmidt angle, then partner): {f:.4f} +/- {se:.4f}")
