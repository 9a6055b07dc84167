import json
import random
from fractions import Fraction
from importlib import resources

import pytest

from legcap.front_model import parse_front, scale_heights
from geometry import realize
from legcap.generate import random_front, with_chord_ids

CORPUS = resources.files("legcap") / "corpus"


def corpus_front(name):
    return parse_front((CORPUS / name).read_text(encoding="utf-8"))


def corpus_names():
    manifest = json.loads((CORPUS / "manifest.json").read_text(encoding="utf-8"))
    return sorted(e["file"] for e in manifest["entries"])


def good_corpus_names():
    manifest = json.loads((CORPUS / "manifest.json").read_text(encoding="utf-8"))
    return sorted(e["file"] for e in manifest["entries"] if "error" not in e)


def unknot(r):
    return scale_heights(corpus_front("unknot.json"), Fraction(r))


def trefoil(r=1):
    return scale_heights(corpus_front("trefoil.json"), Fraction(r))


def random_fronts(seed, n, max_crossings=10):
    rng = random.Random(seed)
    return [with_chord_ids(random_front(rng, max_crossings, name=f"rand{seed}-{i}"))
            for i in range(n)]


def realized_fronts(seed, n, max_crossings=10):
    rng = random.Random(seed)
    out = []
    for i in range(n):
        f = with_chord_ids(random_front(rng, max_crossings))
        out.append(realize(f, rng, name=f"geo{seed}-{i}"))
    return out


@pytest.fixture(scope="session")
def realized():
    return realized_fronts(2024, 60)
