import json
from importlib import resources


def load_schema(name):
    ref = resources.files("freesplit").joinpath("schemas/%s.schema.json" % name)
    return json.loads(ref.read_text(encoding="utf-8"))
