"""
Integrated gradients on a tiny scorer
=====================================

The midpoint rule is exact for a linear scorer, and for curved scorers the
attributions add up to the score change as the step count grows.  The
mask-summed attribution is the number the pruning rule compares against P.
"""

import numpy as np
import torch

from spurforge.attribution import integrated_gradients, masked_score

rng = np.random.default_rng(0)
x, x_edit = rng.random((6, 6, 3)), rng.random((6, 6, 3))

# linear: IG is just (x' - x) * w, whatever the step count
w = rng.normal(size=x.shape)
wt = torch.as_tensor(w)
ig = integrated_gradients(lambda z: (z * wt).flatten(1).sum(dim=1), x, x_edit, steps=1)
print("linear max error:", np.abs(ig.ig - (x_edit - x) * w).max())

# curved: watch the completeness gap shrink
def curved(z):
    return torch.tanh((z * wt).flatten(1).sum(dim=1) / 10)

delta = float(curved(torch.as_tensor(x_edit)[None]) - curved(torch.as_tensor(x)[None]))
for steps in (2, 8, 32, 128):
    total = integrated_gradients(curved, x, x_edit, steps=steps).total
    print(f"steps={steps:<4} sum(IG)={total:+.6f}  f(x')-f(x)={delta:+.6f}  gap={abs(total - delta):.2e}")

# only the edited region counts
mask = np.zeros((6, 6), bool)
mask[1:4, 2:5] = True
score = masked_score(integrated_gradients(curved, x, x_edit, steps=64), mask, threshold=0.0)
print(f"rho over {score.mask_area} pixels = {score.rho:+.4f}, passes P=0: {score.passed}")
