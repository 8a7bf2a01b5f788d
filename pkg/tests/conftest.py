import json

import pytest

# the trefoil exactly as typed into the interactive session: ids 0, 1, 2
SESSION_TREFOIL = {
    "name": "trefoil",
    "generators": [
        {"id": "0", "i": 1, "j": 1},
        {"id": "1", "i": 0, "j": 1},
        {"id": "2", "i": 1, "j": 0},
    ],
    "differential": [{"from": "0", "to": ["1", "2"]}],
}


@pytest.fixture
def trefoil_file(tmp_path):
    path = tmp_path / "trefoil.json"
    path.write_text(json.dumps(SESSION_TREFOIL))
    return path

