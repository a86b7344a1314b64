"""Regenerate the published wire contract under schemas/v1/."""
import json
import sys
from pathlib import Path

sys.path.insert(0, "src")
from argmine.service.error_codes import registry_payload
from argmine.service.models import REQUEST_MODELS

out = Path("schemas/v1")
out.mkdir(parents=True, exist_ok=True)

for name, model in REQUEST_MODELS.items():
    schema = model.model_json_schema()
    path = out / f"{name}_request.json"
    path.write_text(json.dumps(schema, indent=2, sort_keys=True) + "\n")
    print(path)

path = out / "error_codes.json"
path.write_text(json.dumps(registry_payload(), indent=2, sort_keys=True) + "\n")
print(path)
