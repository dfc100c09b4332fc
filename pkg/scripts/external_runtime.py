#!/usr/bin/env python3
"""Pose as an external runtime reporting probe values over localhost.

Usage: external_runtime.py BASE_URL [PROBE_ID]

Posts a handful of values with the wire body {"id": ..., "value": ...},
then verifies they are visible through the API. Also checks that a body
without an id is rejected with 400. Exits 0 on success.
"""

import sys

import requests


def main() -> int:
    base = sys.argv[1] if len(sys.argv) > 1 else "http://127.0.0.1:9911"
    probe_id = sys.argv[2] if len(sys.argv) > 2 else "9af7ih"

    values = [12, "hello", [1, 2, 3], {"x": 1.5}]
    for value in values:
        resp = requests.post(f"{base}/report-probe",
                             json={"id": probe_id, "value": value},
                             timeout=5)
        if resp.status_code != 200:
            print(f"report-probe rejected: {resp.status_code} {resp.text}")
            return 1

    resp = requests.post(f"{base}/report-probe", json={"value": 1}, timeout=5)
    if resp.status_code != 400:
        print(f"missing id should be 400, got {resp.status_code}")
        return 1

    seen = requests.get(f"{base}/external-captures", timeout=5).json()
    got = [c["value"] for c in seen if c["id"] == probe_id]
    if got != values:
        print(f"buffered values mismatch: {got!r} != {values!r}")
        return 1

    print(f"ok: {len(values)} values buffered for probe {probe_id}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
