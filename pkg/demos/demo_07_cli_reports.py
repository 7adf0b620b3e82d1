"""
Command-line reports
====================

Every computation has a subcommand.  Reports are deterministic, so they
can be diffed or checked into a repository as golden files.  Catalogue
names can be given in place of file paths.
"""

import json

from reflexdga.catalogue import catalogue
from reflexdga.cli import run_command

############################################################
# The shipped inputs

for e in catalogue().entries:
    print(f"{e.name:24s} {e.digest[:19]}")

############################################################
# A text report

print(run_command("hh", ["--max-weight", "4", "--degrees", "-2..4", "dual_numbers_deg1"]).to_text())

############################################################
# The same data as JSON

doc = json.loads(run_command("reflexivity", ["dual_numbers_deg1"]).to_json())
print(doc["result"]["verdict"], [e["status"] for e in doc["result"]["evidence"]])

############################################################
# From a shell:
#
#   reflexdga hh --max-weight 6 --degrees -2..4 dual_numbers_deg1.alg
#   reflexdga monoidal-selftest --trials 50 --seed 7 --json --out selftest.json
