# Copyright 2026 The Scholiview Authors
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

"""Expected results for the RDF fixtures, computed with rdflib.

Usage: listing_query_oracle.py RDF_FIXTURE_DIR [--check]

For every *.nt file except malformed.nt, parses it with rdflib, runs the
video-selection SPARQL query and writes NAME.expected (sorted URLs, one per
line) plus triple_counts.txt. With --check nothing is written; the script
exits 1 if any stored file disagrees with rdflib.
"""

import sys
from pathlib import Path

import rdflib

ASR = "http://av.example.org/tools/asr"

QUERY = """
PREFIX dcterms: <http://purl.org/dc/terms/>
PREFIX oa:      <http://w3.org/ns/oa#>

SELECT DISTINCT ?url
WHERE {
    ?annotation oa:annotatedBy <%s> .
    ?annotation oa:hasTarget ?videofragment .
    ?videofragment dcterms:isPartOf ?url .}
"""


def main():
    root = Path(sys.argv[1])
    check = "--check" in sys.argv[2:]
    outputs = {}
    counts = []
    for nt in sorted(root.glob("*.nt")):
        if nt.name == "malformed.nt":
            try:
                rdflib.Graph().parse(nt, format="nt")
            except Exception:
                continue
            print("rdflib accepted malformed.nt", file=sys.stderr)
            return 1
        g = rdflib.Graph()
        g.parse(nt, format="nt")
        counts.append("%s\t%d\n" % (nt.name, len(g)))
        # Only IRI-valued ?url bindings name a video.
        urls = sorted(str(row.url) for row in g.query(QUERY % ASR) if isinstance(row.url, rdflib.URIRef))
        outputs[nt.with_suffix(".expected")] = "".join(u + "\n" for u in urls)
    outputs[root / "triple_counts.txt"] = "".join(counts)

    bad = 0
    for path, text in outputs.items():
        if check:
            if not path.exists() or path.read_text(encoding="utf-8") != text:
                print("mismatch: %s" % path, file=sys.stderr)
                bad += 1
        else:
            path.write_text(text, encoding="utf-8")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
