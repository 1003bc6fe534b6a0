#!/usr/bin/env python3
# Copyright 2026 The poda Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the sample models and CSVs in this directory.

Usage: python3 data/generate.py  (from the repository root)
"""

import json
import os

import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))


def write_json(name, doc):
    with open(os.path.join(HERE, name), "w") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")


def write_csv(name, header, rows):
    with open(os.path.join(HERE, name), "w") as f:
        f.write(",".join(header) + "\n")
        for r in rows:
            f.write(",".join(repr(float(v)) for v in r) + "\n")


def mlp(rng, d, hidden):
    w1 = rng.normal(0.0, 1.0 / np.sqrt(d), size=(hidden, d))
    b1 = rng.normal(0.0, 0.3, size=hidden)
    w2 = rng.normal(0.0, 1.0 / np.sqrt(hidden), size=(1, hidden))
    b2 = rng.normal(0.0, 0.1, size=1)
    doc = {
        "type": "mlp",
        "input_dim": d,
        "layers": [
            {"weights": w1.round(6).tolist(), "bias": b1.round(6).tolist(), "activation": "tanh"},
            {"weights": w2.round(6).tolist(), "bias": b2.round(6).tolist(), "activation": "identity"},
        ],
    }
    return doc


def forward(doc, x):
    h = x
    for layer in doc["layers"]:
        h = h @ np.array(layer["weights"]).T + np.array(layer["bias"])
        if layer["activation"] == "tanh":
            h = np.tanh(h)
    return h[:, 0]


def mlp_set(rng, prefix, d, hidden, n_eval, n_bg):
    doc = mlp(rng, d, hidden)
    write_json(prefix + "_model.json", doc)
    names = ["x%d" % i for i in range(d)]
    x = rng.normal(size=(n_eval, d))
    f = forward(doc, x)
    # Binary label correlated with the model output, for inclusion AUC.
    y = (f + rng.normal(0.0, 0.3, size=n_eval) > np.median(f)).astype(float)
    write_csv(prefix + "_eval.csv", names + ["label"], np.column_stack([x, y]))
    write_csv(prefix + "_background.csv", names, rng.normal(size=(n_bg, d)))


def main():
    rng = np.random.default_rng(20260321)

    # f = x0 + 2 x1 + x0 x1
    write_json("poly2_model.json", {
        "type": "polynomial",
        "input_dim": 2,
        "monomials": [
            {"coef": 1.0, "exps": {"0": 1}},
            {"coef": 2.0, "exps": {"1": 1}},
            {"coef": 1.0, "exps": {"0": 1, "1": 1}},
        ],
    })
    write_csv("poly2_instances.csv", ["a", "b"], [[1.0, 2.0], [2.0, 3.0], [-1.0, 0.5]])
    write_csv("poly2_zero.csv", ["a", "b"], [[0.0, 0.0]])

    # f = 2 x0 - x1 + 0.5 x2 + 1.5 x0 x1 + x0 x1 x2 + x1^2 x2
    write_json("poly3_model.json", {
        "type": "polynomial",
        "input_dim": 3,
        "monomials": [
            {"coef": 2.0, "exps": {"0": 1}},
            {"coef": -1.0, "exps": {"1": 1}},
            {"coef": 0.5, "exps": {"2": 1}},
            {"coef": 1.5, "exps": {"0": 1, "1": 1}},
            {"coef": 1.0, "exps": {"0": 1, "1": 1, "2": 1}},
            {"coef": 1.0, "exps": {"1": 2, "2": 1}},
        ],
    })
    write_csv("poly3_instances.csv", ["u", "v", "w"],
              rng.uniform(-1.5, 1.5, size=(10, 3)).round(4))
    write_csv("poly3_beta.csv", ["u", "v", "w"], [[0.25, -0.5, 0.1]])

    mlp_set(rng, "mlp8", d=8, hidden=16, n_eval=100, n_bg=64)
    mlp_set(rng, "mlp12", d=12, hidden=16, n_eval=100, n_bg=64)


if __name__ == "__main__":
    main()
