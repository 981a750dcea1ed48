# Copyright 2026 The setcover-kit Authors
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

"""Validate every shipped instance file against schema/instance.schema.json."""
import glob
import json
import os
import sys

import jsonschema

root = sys.argv[1]
schema = json.load(open(os.path.join(root, "schema", "instance.schema.json")))
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)
failed = 0
for path in sorted(glob.glob(os.path.join(root, "instances", "*.json"))):
    errors = list(validator.iter_errors(json.load(open(path))))
    print(("ok   " if not errors else "FAIL ") + os.path.relpath(path, root))
    failed += bool(errors)
# A misspelled field must be rejected.
bad = json.load(open(os.path.join(root, "instances", "t1.json")))
bad["inclusion"]["psi"]["colour"] = 1
if validator.is_valid(bad):
    print("FAIL unknown field accepted")
    failed += 1
sys.exit(1 if failed else 0)
