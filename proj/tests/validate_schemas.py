import json
import sys
from pathlib import Path

import jsonschema

schema_dir = Path(sys.argv[1])
instance = json.loads(Path(sys.argv[2]).read_text())
report = json.loads(Path(sys.argv[3]).read_text())

jsonschema.validate(instance, json.loads((schema_dir / "instance.schema.json").read_text()))
jsonschema.validate(report, json.loads((schema_dir / "verify-report.schema.json").read_text()))
jsonschema.validate(report["buckling"], json.loads((schema_dir / "buckling-report.schema.json").read_text()))
print("schemas ok")
