#!/usr/bin/env python3
# Copyright 2026 The Analogy Engine Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent oracles for the frozen values in the C++ tests.

Clustering partitions come from scipy's hierarchical clustering, NDCG from
scikit-learn, precision/AP from exact rational arithmetic. Rerun and compare
against the constants in clustering_cases.h and metric_cases.h after changing
a case.
"""

from fractions import Fraction

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.spatial.distance import squareform
from sklearn.metrics import ndcg_score

GAIN = {"not": 0, "sub": 1, "self": 2, "close": 3, "far": 4}


def first_appearance(labels):
    seen, out = {}, []
    for l in labels:
        seen.setdefault(l, len(seen))
        out.append(seen[l])
    return out


def cluster(n, dists, threshold, method):
    m = np.zeros((n, n))
    for (i, j), d in dists.items():
        m[i, j] = m[j, i] = d
    if n == 1:
        return [0]
    z = linkage(squareform(m), method=method)
    return first_appearance(fcluster(z, t=threshold, criterion="distance"))


CLUSTER_CASES = [
    # name, n, {(i, j): d}, threshold, method
    ("five_spans_avg", 5, {(0, 1): .2, (0, 2): .9, (0, 3): 1.5, (0, 4): 1.6, (1, 2): .7,
                           (1, 3): 1.4, (1, 4): 1.7, (2, 3): 1.2, (2, 4): 1.3, (3, 4): .4},
     1.0, "average"),
    ("five_spans_tight", 5, {(0, 1): .2, (0, 2): .9, (0, 3): 1.5, (0, 4): 1.6, (1, 2): .7,
                             (1, 3): 1.4, (1, 4): 1.7, (2, 3): 1.2, (2, 4): 1.3, (3, 4): .4},
     0.5, "average"),
    ("chain_avg", 3, {(0, 1): .5, (1, 2): .6, (0, 2): 1.8}, 1.0, "average"),
    ("chain_single", 3, {(0, 1): .5, (1, 2): .6, (0, 2): 1.8}, 1.0, "single"),
    ("chain_complete", 3, {(0, 1): .5, (1, 2): .6, (0, 2): 1.8}, 1.0, "complete"),
    ("six_two_groups", 6, {(0, 1): .1, (0, 2): .3, (1, 2): .25, (3, 4): .15, (3, 5): .35,
                           (4, 5): .2, (0, 3): 1.9, (0, 4): 1.8, (0, 5): 1.7, (1, 3): 1.85,
                           (1, 4): 1.75, (1, 5): 1.95, (2, 3): 1.6, (2, 4): 1.65, (2, 5): 1.55},
     1.0, "average"),
    ("six_complete_split", 6, {(0, 1): .3, (1, 2): .3, (2, 3): .3, (3, 4): .3, (4, 5): .3,
                               (0, 2): .65, (1, 3): .62, (2, 4): .61, (3, 5): .64,
                               (0, 3): .95, (1, 4): .93, (2, 5): .97,
                               (0, 4): 1.3, (1, 5): 1.25, (0, 5): 1.6},
     0.7, "complete"),
    ("six_single_chain", 6, {(0, 1): .3, (1, 2): .3, (2, 3): .3, (3, 4): .3, (4, 5): .3,
                             (0, 2): .65, (1, 3): .62, (2, 4): .61, (3, 5): .64,
                             (0, 3): .95, (1, 4): .93, (2, 5): .97,
                             (0, 4): 1.3, (1, 5): 1.25, (0, 5): 1.6},
     0.7, "single"),
    ("interleaved_avg", 4, {(0, 2): .3, (1, 3): .35, (0, 1): 1.2, (0, 3): 1.1, (1, 2): 1.3,
                            (2, 3): 1.4},
     1.0, "average"),
    ("boundary_equal", 2, {(0, 1): 1.0}, 1.0, "average"),
]


def ranking_metrics(labels, k):
    top = labels[:k]
    rel = [GAIN[l] > 0 for l in top]
    p = Fraction(sum(rel), k)
    hits, acc = 0, Fraction(0)
    for i, r in enumerate(rel):
        if r:
            hits += 1
            acc += Fraction(hits, i + 1)
    ap = acc / hits if hits else Fraction(0)
    gains = [GAIN[l] for l in top]
    if sum(gains) == 0:
        ndcg = 0.0
    elif len(gains) == 1:
        ndcg = 1.0
    else:
        scores = list(range(len(gains), 0, -1))
        ndcg = ndcg_score([gains], [scores], k=k)
    return float(p), float(ap), float(ndcg)


RANK_CASES = [
    (["far", "not", "self", "not"], 4),
    (["far", "far", "far"], 3),
    (["not", "not", "far", "close"], 4),
    (["sub", "self", "close", "far", "not"], 5),
    (["far", "close", "self", "sub", "not"], 5),
    (["not", "not", "not"], 3),
    (["close", "not", "not", "not", "not", "not", "not", "not", "not", "far"], 10),
    (["self", "far", "not", "sub", "close", "not"], 3),
    (["not", "sub"], 2),
    (["far", "not", "close", "not", "self", "not", "sub", "not", "far", "not"], 10),
]


if __name__ == "__main__":
    print("// clustering")
    for name, n, d, t, method in CLUSTER_CASES:
        print(name, cluster(n, d, t, method))
    print("// ranking (P, AP, NDCG)")
    for labels, k in RANK_CASES:
        p, ap, nd = ranking_metrics(labels, k)
        print(labels, k, f"{p!r} {ap!r} {nd!r}")
