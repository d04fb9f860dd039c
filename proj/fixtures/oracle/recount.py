#!/usr/bin/env python3
"""Independent recount of the per-scenario metrics of a scenario corpus.

This is a plain text pipeline that shares no code with the C++ tool: the
meta header and the known tags are removed by regular expressions, words are
counted line by line, and tag occurrences are counted directly in the source.

    recount.py SCENARIOS_DIR                 print the recount as JSON
    recount.py SCENARIOS_DIR --check BINARY  compare against `BINARY stats`
"""

import argparse
import json
import pathlib
import re
import subprocess
import sys

KINDS = "phase|level|model|def|ref|modelref|scenarioref"
TAG_RE = re.compile(r"</?(?:%s)(?=[\s/>])[^>]*>" % KINDS)
META_RE = re.compile(r"^\s*<rasaeco-meta>(.*?)</rasaeco-meta>\n?", re.S)
DEF_RE = re.compile(r"<def\s+name=\"([^\"]*)\"\s*>(.*?)</def\s*>", re.S)
IFC_RE = re.compile(r"(?<![A-Za-z0-9_])Ifc[A-Za-z0-9]+")
WORD_RE = re.compile(r"[^ \t\n\r\f\v]+")
HEADING_RE = re.compile(r"^#+(?=[ \t\r\f\v]|$)")
BULLET_RE = re.compile(r"^(?:[-*]|[0-9]+\.)(?=[ \t\r\f\v]|$)")

DEFAULT_VOCABULARY = {
    "IfcZone", "IfcTask", "IfcActor", "IfcControl", "IfcCostItem",
    "IfcRelAssignsToControl", "IfcPerformanceHistory",
}


def strip_tags(text):
    while True:
        stripped = TAG_RE.sub("", text)
        if stripped == text:
            return text
        text = stripped


def count_words(text):
    words = 0
    in_code = False
    for line in text.split("\n"):
        trimmed = line.lstrip(" \t\r\f\v")
        if trimmed.startswith("```"):
            in_code = not in_code
            continue
        if not in_code:
            trimmed = HEADING_RE.sub("", trimmed, count=1)
            trimmed = BULLET_RE.sub("", trimmed, count=1)
        words += len(WORD_RE.findall(trimmed))
    return words


def recount(scenarios_dir, vocabulary):
    rows = {}
    relations = {}
    for path in sorted(pathlib.Path(scenarios_dir).rglob("scenario.md")):
        identifier = path.parent.name
        text = path.read_text(encoding="utf-8").replace("\r\n", "\n")
        match = META_RE.match(text)
        meta = json.loads(match.group(1))
        body = text[match.end():]
        matched = 0
        for _, inner in DEF_RE.findall(body):
            if any(t in vocabulary for t in IFC_RE.findall(strip_tags(inner))):
                matched += 1
        rows[identifier] = {
            "identifier": identifier,
            "word_count": count_words(strip_tags(body)),
            "phase_markings": len(re.findall(r"<phase\s+name=", body)),
            "level_markings": len(re.findall(r"<level\s+name=", body)),
            "definitions": len(re.findall(r"<def\s+name=", body)),
            "ifc_matched": matched,
            "in_degree": 0,
            "out_degree": 0,
        }
        relations[identifier] = [r["target"] for r in meta.get("relations", [])]
    for source, targets in relations.items():
        for target in targets:
            if target in rows:
                rows[source]["out_degree"] += 1
                rows[target]["in_degree"] += 1
    return [rows[k] for k in sorted(rows)]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("scenarios_dir")
    parser.add_argument("--check", metavar="BINARY")
    parser.add_argument("--frozen", metavar="JSON")
    args = parser.parse_args()

    expected = recount(args.scenarios_dir, DEFAULT_VOCABULARY)
    if args.frozen:
        with open(args.frozen, encoding="utf-8") as f:
            frozen = json.load(f)["scenarios"]
        same = frozen == expected
        if not same:
            print("recount differs from %s" % args.frozen)
        print("frozen %s" % ("pass" if same else "fail"))
        return 0 if same else 1
    if not args.check:
        json.dump({"scenarios": expected}, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return 0

    out = subprocess.run(
        [args.check, "stats", "--scenarios-dir", args.scenarios_dir],
        check=False, capture_output=True, text=True)
    actual = {s["identifier"]: s for s in json.loads(out.stdout)["scenarios"]}
    mismatches = []
    for row in expected:
        got = actual.get(row["identifier"])
        if got is None:
            mismatches.append("%s: missing from stats" % row["identifier"])
            continue
        for key, value in row.items():
            if got.get(key) != value:
                mismatches.append("%s.%s: oracle %r, stats %r"
                                  % (row["identifier"], key, value, got.get(key)))
    for extra in sorted(set(actual) - {r["identifier"] for r in expected}):
        mismatches.append("%s: not in oracle" % extra)
    for line in mismatches:
        print(line)
    print("oracle %s" % ("fail" if mismatches else "pass"))
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
