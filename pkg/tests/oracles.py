"""Independent reference implementations used only to check the library.

Everything here is deliberately naive (quadratic DFT, exhaustive pair
counting) so that agreement with the production code is meaningful.
"""

import numpy as np


def naive_rdft(frame):
    """O(n^2) DFT of a real frame; returns the n//2 + 1 one-sided bins."""
    x = np.asarray(frame, dtype=np.float64)
    n = x.shape[0]
    out = np.zeros(n // 2 + 1, dtype=np.complex128)
    for k in range(n // 2 + 1):
        acc = 0.0 + 0.0j
        for t in range(n):
            acc += x[t] * np.exp(-2j * np.pi * k * t / n)
        out[k] = acc
    return out


def pair_count_auc(scores, positive):
    """AUC as the probability a random positive outscores a random negative.

    Exhaustive O(P*N) pair counting with ties worth 1/2.  Returns the exact
    float (2*wins + ties) / (2*P*N), or None if either side is empty.
    """
    scores = np.asarray(scores, dtype=np.float64)
    positive = np.asarray(positive, dtype=bool)
    pos = scores[positive]
    neg = scores[~positive]
    if pos.size == 0 or neg.size == 0:
        return None
    wins = 0
    ties = 0
    for p in pos:
        for q in neg:
            if p > q:
                wins += 1
            elif p == q:
                ties += 1
    return (2 * wins + ties) / (2 * pos.size * neg.size)
