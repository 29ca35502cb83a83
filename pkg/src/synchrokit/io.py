"""Automaton and word-set files, and DOT export.

Automaton file::

    {"n": 4, "alphabet": ["a", "b"], "delta": [[1, 1], [2, 1], [3, 2], [0, 3]]}

``delta[q][i]`` is the image of state ``q`` under ``alphabet[i]``, 0-indexed.

Word-set file: ``{"words": ["bb", "bbb"], "k": 1}`` or a bare list of words.
A word is a string of letter names (space separated when some name is longer
than one character) or a list of names.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .automaton import Automaton, InvalidWordError, Word


class FileFormatError(ValueError):
    pass


def automaton_to_dict(A: Automaton) -> dict[str, Any]:
    return {"n": A.n, "alphabet": list(A.alphabet), "delta": [list(row) for row in A.delta]}


def automaton_from_dict(doc: Any) -> Automaton:
    if not isinstance(doc, dict):
        raise FileFormatError("automaton file must hold a JSON object")
    missing = {"n", "alphabet", "delta"} - doc.keys()
    if missing:
        raise FileFormatError(f"missing field(s): {', '.join(sorted(missing))}")
    n, alphabet, delta = doc["n"], doc["alphabet"], doc["delta"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise FileFormatError("'n' must be an integer")
    if not isinstance(alphabet, list) or not all(isinstance(x, str) for x in alphabet):
        raise FileFormatError("'alphabet' must be a list of strings")
    if not isinstance(delta, list) or not all(isinstance(row, list) for row in delta):
        raise FileFormatError("'delta' must be a list of lists")
    for row in delta:
        if not all(isinstance(t, int) and not isinstance(t, bool) for t in row):
            raise FileFormatError("'delta' entries must be integers")
    try:
        return Automaton(n, tuple(alphabet), tuple(tuple(row) for row in delta))
    except ValueError as e:
        raise FileFormatError(str(e)) from None


def parse_json(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        line = text.splitlines()[e.lineno - 1] if 0 < e.lineno <= len(text.splitlines()) else ""
        raise FileFormatError(f"{source}:{e.lineno}:{e.colno}: {e.msg}\n  {line}") from None


def loads_automaton(text: str, source: str = "<input>") -> Automaton:
    return automaton_from_dict(parse_json(text, source))


def dumps_automaton(A: Automaton) -> str:
    return json.dumps(automaton_to_dict(A))


def load_automaton(path: str | Path) -> Automaton:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise FileFormatError(f"{path}: {e.strerror}") from None
    return loads_automaton(text, str(path))


def save_automaton(A: Automaton, path: str | Path) -> None:
    Path(path).write_text(dumps_automaton(A) + "\n")


def load_word_set(path: str | Path, A: Automaton) -> tuple[list[Word], int]:
    """Words and ``k`` (0 means infer) from a word-set file."""
    path = Path(path)
    try:
        doc = parse_json(path.read_text(), str(path))
    except OSError as e:
        raise FileFormatError(f"{path}: {e.strerror}") from None
    k = 0
    if isinstance(doc, dict):
        k = doc.get("k", 0)
        doc = doc.get("words")
    if not isinstance(doc, list) or not doc:
        raise FileFormatError(f"{path}: expected a non-empty list of words")
    if not isinstance(k, int) or k < 0:
        raise FileFormatError(f"{path}: 'k' must be a non-negative integer")
    try:
        return [A.word(w) for w in doc], k
    except InvalidWordError as e:
        raise FileFormatError(f"{path}: {e}") from None


def to_dot(A: Automaton, name: str = "A") -> str:
    """Graphviz source; parallel edges between two states are merged into one
    edge with a comma-separated label."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=circle];"]
    for q in range(A.n):
        lines.append(f"  {q};")
    for q in range(A.n):
        by_target: dict[int, list[str]] = {}
        for a, t in enumerate(A.delta[q]):
            by_target.setdefault(t, []).append(A.alphabet[a])
        for t, labels in by_target.items():
            label = ",".join(labels).replace('"', '\\"')
            lines.append(f'  {q} -> {t} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
