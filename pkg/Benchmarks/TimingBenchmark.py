import os
import sys
import time
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from dotenv import load_dotenv
load_dotenv()

from corpus_builder import generate_corpus
from spectralTools.coverTool import bvn_decompose, verify_cover
from spectralTools.errors import TooLarge
from spectralTools.expansionTool import expansion_profile
from spectralTools.helper import Budgets
from spectralTools.spectrumTool import normalized_spectrum
from spectralTools.symmetryTool import automorphism_group
from verifier import verify_theorem1

SPECTRUM_TARGET_S = 1.0
CORPUS_TARGET_S = 60.0


class StageTimer:
    """Per-stage wall clock, accumulated over graphs."""

    def __init__(self):
        self.totals = {}
        self.calls = {}

    def measure(self, stage, fn, *args):
        start = time.perf_counter()
        try:
            return fn(*args)
        finally:
            elapsed = time.perf_counter() - start
            self.totals[stage] = self.totals.get(stage, 0.0) + elapsed
            self.calls[stage] = self.calls.get(stage, 0) + 1

    def reset(self):
        self.totals = {}
        self.calls = {}

    def print_stats(self):
        print(f"\n📊 STAGE TIMINGS:")
        for stage, total in sorted(self.totals.items(), key=lambda kv: -kv[1]):
            print(f"   ⏱️ {stage:<12} {total:8.3f} s over {self.calls[stage]} graphs")


budgets = Budgets()
timer = StageTimer()
entries = generate_corpus()

print("🚀 Starting Timing Benchmark...")
print("=" * 50)

results = []
corpus_start = time.perf_counter()

for i, entry in enumerate(entries, 1):
    print(f"\n[{i}/{len(entries)}] {entry.graph_id} (n={entry.graph.n})")
    before = dict(timer.totals)
    try:
        timer.measure("spectrum", normalized_spectrum, entry.graph)
        timer.measure("expansion", expansion_profile, entry.graph, budgets.subsets)
        try:
            timer.measure("automorphism", automorphism_group, entry.graph, budgets.aut, budgets.aut_order)
        except TooLarge as e:
            print(f"   ⚠️ {e.describe()}")
        cover = timer.measure("cover", bvn_decompose, entry.graph)
        assert verify_cover(entry.graph, cover)
        report = timer.measure("verify", verify_theorem1, entry.graph, entry.graph_id, budgets, entry.certificate)
        spent = {k: timer.totals[k] - before.get(k, 0.0) for k in timer.totals}
        results.append({"graph_id": entry.graph_id, "spectrum": spent.get("spectrum", 0.0), "verify": spent.get("verify", 0.0)})
        print(f"   ✅ verify {spent['verify']:.3f} s, applicable={report.applicable}")
    except Exception as e:
        print(f"   ❌ Error: {e}")

corpus_elapsed = time.perf_counter() - corpus_start

print("\n" + "=" * 50)
timer.print_stats()

print("\n📋 PER-GRAPH BREAKDOWN:")
for r in results:
    flag = "✅" if r["spectrum"] < SPECTRUM_TARGET_S else "⚠️"
    print(f"   {flag} {r['graph_id']:<16} spectrum {r['spectrum']:.3f} s, verify {r['verify']:.3f} s")

verify_total = timer.totals.get("verify", 0.0)
flag = "✅" if verify_total < CORPUS_TARGET_S else "⚠️"
print(f"\n{flag} corpus verification {verify_total:.2f} s (target < {CORPUS_TARGET_S:.0f} s), whole run {corpus_elapsed:.2f} s")
