from pathlib import Path

import pytest

from stateproof.io.syntax import parse_signature
from stateproof.logic.memory import MemorySignature, declare_signature

REPO_ROOT = Path(__file__).resolve().parent.parent
CORPUS_DIR = REPO_ROOT / "corpus"


@pytest.fixture
def sig() -> MemorySignature:
    """Two locations with boolean carriers, the default signature."""
    return declare_signature(["i", "j"], {"i": (0, 1), "j": (0, 1)})


@pytest.fixture
def sig3() -> MemorySignature:
    """Two locations with three values each."""
    return declare_signature(["i", "j"], {"i": (0, 1, 2), "j": (0, 1, 2)})


@pytest.fixture
def single_sig() -> MemorySignature:
    return declare_signature(["i"], {"i": (0, 1)})


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS_DIR


@pytest.fixture
def commutation_script_path(corpus_dir: Path) -> Path:
    return corpus_dir / "commutation.proof"


@pytest.fixture
def default_sig_path(corpus_dir: Path) -> Path:
    return corpus_dir / "signatures" / "default.sig"


@pytest.fixture
def write_file(tmp_path: Path):
    """Write `text` to `tmp_path / name` and return the path."""

    def write(name: str, text: str) -> Path:
        path = tmp_path / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        return path

    return write


@pytest.fixture
def parsed_default_sig(default_sig_path: Path) -> MemorySignature:
    return parse_signature(default_sig_path.read_text(encoding="utf-8"))
