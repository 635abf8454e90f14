import os, sys
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from dotenv import load_dotenv
load_dotenv()
from codecarbon import EmissionsTracker

from corpus_builder import generate_corpus
from spectralTools.helper import WORKERS, Budgets
from verifyapp import run_corpus


entries = generate_corpus()
items = [(e.graph_id, e.graph, e.certificate) for e in entries]

tracker = EmissionsTracker(project_name="SpectralBoundCorpus", output_dir=".", on_csv_write="append")
tracker.start()

try:
    reports = run_corpus(items, Budgets(), WORKERS)
finally:
    emissions = tracker.stop()

violated = [r.graph_id for r in reports if r.violated]
print(f"\n🌍 {len(reports)} graphs verified, {emissions} kg CO2eq")
if violated:
    print(f"❌ violations: {', '.join(violated)}")
else:
    print("✅ every applicable graph satisfies both endpoints")
