import os

import pytest


def pytest_collection_modifyitems(config, items):
    if os.environ.get("IRREDFORGE_EXTENDED") == "1":
        return
    skip = pytest.mark.skip(reason="set IRREDFORGE_EXTENDED=1 to run")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)
