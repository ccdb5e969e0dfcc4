import json
import os
import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]
DATA = pathlib.Path(os.environ.get("EXPEDITION_TEST_DATA_DIR", ROOT / "tests" / "data"))
SCHEMAS = pathlib.Path(os.environ.get("EXPEDITION_SCHEMA_DIR", ROOT / "schemas"))


@pytest.fixture(scope="session")
def tiny6_path():
    return DATA / "tiny6.jsonl"


@pytest.fixture(scope="session")
def engine(tiny6_path):
    import expedition

    return expedition.Engine.from_corpus(tiny6_path)


@pytest.fixture(scope="session")
def schema():
    import jsonschema

    cache = {}

    def validate(name, instance):
        if name not in cache:
            doc = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
            jsonschema.Draft202012Validator.check_schema(doc)
            cache[name] = jsonschema.Draft202012Validator(doc)
        cache[name].validate(instance)
        return instance

    return validate


@pytest.fixture(scope="session")
def data_dir():
    return DATA
