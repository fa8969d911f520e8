#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Generate small datasets with the isp CLI and validate their manifests."""

import json
import pathlib
import shutil
import subprocess
import sys

import jsonschema


def main() -> int:
    exe, schema_path, work = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    schema = json.loads(schema_path.read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    shutil.rmtree(work, ignore_errors=True)

    runs = {
        "one": ["--count", "1"],
        "ten": ["--count", "10", "--N", "2", "--delta", "0.25", "--seed", "9", "--split", "0.7"],
    }
    for name, extra in runs.items():
        out = work / name
        subprocess.run([exe, "gen-disks", "--out-dir", str(out), *extra], check=True)
        manifest = json.loads((out / "manifest.json").read_text())
        errors = list(validator.iter_errors(manifest))
        for e in errors:
            print(f"{name}: {e.json_path}: {e.message}")
        if errors:
            return 1
        if manifest["split"]["train"] + manifest["split"]["test"] != manifest["count"]:
            print(f"{name}: split does not add up to count")
            return 1
        if len(manifest["files"]) != manifest["count"]:
            print(f"{name}: file list length differs from count")
            return 1
        for f in manifest["files"]:
            for key in ("input", "target"):
                if not (out / f[key]).is_file():
                    print(f"{name}: missing {f[key]}")
                    return 1
        print(f"{name}: ok ({manifest['count']} samples)")

    # The schema must reject a manifest with an unknown kind.
    bad = dict(manifest, kind="spheres")
    if validator.is_valid(bad):
        print("schema accepted an invalid manifest")
        return 1
    shutil.rmtree(work, ignore_errors=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
