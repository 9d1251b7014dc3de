"""Run a couple of acceptance suites in-process and print their verdicts."""
from agtlab.suites import RunConfig, run_suites

for rep in run_suites(["pure-c2", "integrals", "edges"], RunConfig()):
    print(f"criterion {rep['criterion']:2d} {'PASS' if rep['pass'] else 'FAIL'}  {rep['title']}")
    for chk in rep["checks"]:
        print(f"    {'PASS' if chk['pass'] else 'FAIL'}  {chk['name']}")
