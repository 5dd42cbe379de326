#!/usr/bin/env python3
"""The full search pipeline on the committed net01 fixture.

plan -> (accuracies from the planted linear model) -> fit -> generate ->
select, at three latency budgets and three resolutions.  Everything is
seeded, so this prints exactly the winners stored in the winner-report
fixtures.
"""

from genet import fixture_path
from genet.cost import ingest_benchmark
from genet.search import (
    PerturbationRanges,
    SearchConfig,
    fit_pseudo_gradients,
    generate_candidates,
    ingest_trials,
    select_best,
)
from genet.structure import load_structure

MASTER_ACCURACY = 0.776


def main():
    master = load_structure(fixture_path("net01.json"))
    trials = ingest_trials(fixture_path("llr-trials-net01.csv").read_text(encoding="utf-8"))
    print(f"master {master.name}: {len(list(master.body_indices()))} body super-blocks, "
          f"{len(trials)} trials ingested")

    table = fit_pseudo_gradients(master, MASTER_ACCURACY, trials)
    print("\nfitted pseudo-gradients (coarse entries):")
    for i in master.body_indices():
        e = table.entries[(i, master.superblocks[i].block_type.value)]
        print(f"  sb{i} {e.type_token:4}  g1={e.g1:+.5f}/layer  g2={e.g2:+.2e}/channel  "
              f"n={e.n} rms={e.rms:.2e}")

    lat_table = ingest_benchmark(
        fixture_path("block-latency-synthetic.csv").read_text(encoding="utf-8"))
    candidates = generate_candidates(master, PerturbationRanges(), 200, seed=90210)
    print(f"\n{len(candidates)} seeded candidates; selecting per budget and resolution:")
    for budget in (0.34, 0.20, 0.10):
        config = SearchConfig(latency_budget_ms=budget, seed=90210, num_candidates=200)
        results = select_best(candidates, table, master, lat_table, config)
        print(f"  budget {budget:.2f} ms:")
        for res, r in sorted(results.items()):
            if r.error:
                print(f"    @{res}: {r.error}")
            else:
                print(f"    @{res}: {r.structure.name}  predicted {r.predicted_accuracy:.4f}  "
                      f"estimated {r.estimated_latency_ms:.4f} ms  "
                      f"({r.feasible_count} feasible)")
    print("\nper-resolution winners go to external training; the trained accuracy "
          "picks the final resolution.")


if __name__ == "__main__":
    main()
