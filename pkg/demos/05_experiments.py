"""Seeded, reproducible experiments with PASS/FAIL/SKIPPED verdicts.

The same runs are available from the shell, e.g.
    pinrep run roth --config my.cfg --out results/roth

Run:  python demos/05_experiments.py
"""
from pinrep.experiments import EXPERIMENTS, ExperimentConfig, run

print("available experiments:", ", ".join(sorted(EXPERIMENTS)))

configs = {
    "badly_approx": "window = 4000\nsamples = 4\nn_min = 50\nseed = 11\n",
    "rational_alpha": "window = 6000\nsamples = 4\nmin_hits = 2\nseed = 11\n",
    "discrepancy_decay": "depth = 12\n",
    "stability_table": "alphas = 1/3, 2/5, 3/8\nwidths = 10, 20\n",
}
for name, text in configs.items():
    res = run(name, ExperimentConfig.parse(text, name=name))
    print(f"\n[{res.verdict}] {name}")
    for key, val in sorted(res.summary.items()):
        if not isinstance(val, (list, dict)):
            print(f"    {key}: {val}")

# Identical config and seed always give byte-identical output.
cfg = ExperimentConfig.parse(configs["badly_approx"], name="badly_approx")
a, b = run("badly_approx", cfg), run("badly_approx", cfg)
print("\nrerun identical:", a.summary_json() == b.summary_json() and a.records_csv() == b.records_csv())
