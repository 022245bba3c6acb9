#!/usr/bin/env python3
# Copyright 2026 The routefilter Authors.
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
"""Freeze reference metric values for random run/qrels pairs.

Scores come from pytrec_eval, which wraps the trec_eval measure code.
Every topic gets at least one relevant document and all scores within a
topic are distinct, so trec_eval's own tie-breaking never comes into play.

    python3 make_trec_eval_fixtures.py OUT_DIR [--cases 50] [--seed 20261014]
"""

import argparse
import pathlib
import random

import pytrec_eval

DEPTHS = (5, 10, 15, 20, 30, 100, 200, 500, 1000)
LEVELS = [f"{i / 10:.2f}" for i in range(11)]
MEASURES = {"num_ret", "num_rel", "num_rel_ret", "map", "Rprec", "iprec_at_recall", "P"}
SUMMED = {"num_ret", "num_rel", "num_rel_ret"}


def measure_names():
    names = ["num_ret", "num_rel", "num_rel_ret", "map", "Rprec"]
    names += [f"iprec_at_recall_{level}" for level in LEVELS]
    names += [f"P_{k}" for k in DEPTHS]
    return names


def make_case(rng):
    n_docs = rng.randint(5, 100)
    docs = [f"D{rng.randint(0, 99999):05d}-{i:03d}" for i in range(n_docs)]
    topics = sorted(rng.sample(range(1, 60), rng.randint(1, 5)))
    qrels, run = {}, {}
    for topic in topics:
        judged = rng.sample(docs, rng.randint(1, n_docs))
        labels = {d: int(rng.random() < 0.35) for d in judged}
        labels[judged[0]] = 1
        retrieved = rng.sample(docs, rng.randint(1, n_docs))
        scores = rng.sample(range(-50000, 50000), len(retrieved))
        qrels[str(topic)] = labels
        run[str(topic)] = {d: s / 10000.0 for d, s in zip(retrieved, scores)}
    return qrels, run


def write_case(out_dir, index, qrels, run):
    stem = out_dir / f"case_{index:02d}"
    with open(f"{stem}.qrels", "w") as f:
        for topic in sorted(qrels, key=int):
            for doc, label in sorted(qrels[topic].items()):
                f.write(f"{topic} 0 {doc} {label}\n")
    with open(f"{stem}.run", "w") as f:
        for topic in sorted(run, key=int):
            ranked = sorted(run[topic].items(), key=lambda item: -item[1])
            for rank, (doc, score) in enumerate(ranked, start=1):
                f.write(f"{topic} Q0 {doc} {rank} {score:.6f} fixture\n")

    evaluator = pytrec_eval.RelevanceEvaluator(qrels, MEASURES)
    results = evaluator.evaluate(run)
    names = measure_names()
    with open(f"{stem}.expected", "w") as f:
        for topic in sorted(results, key=int):
            for name in names:
                f.write(f"{name}\t{topic}\t{results[topic][name]:.10f}\n")
        for name in names:
            values = [results[t][name] for t in results]
            total = sum(values) if name in SUMMED else sum(values) / len(values)
            f.write(f"{name}\tall\t{total:.10f}\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out_dir", type=pathlib.Path)
    parser.add_argument("--cases", type=int, default=50)
    parser.add_argument("--seed", type=int, default=20261014)
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)
    for index in range(args.cases):
        qrels, run = make_case(rng)
        write_case(args.out_dir, index, qrels, run)


if __name__ == "__main__":
    main()
