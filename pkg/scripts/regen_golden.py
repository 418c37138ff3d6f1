#!/usr/bin/env python3
"""Rewrite tests/golden/ from the valid corpus. Review the diff before committing."""
from pathlib import Path

from egen import parse, validate
from egen.codegen import GenOptions, generate

ROOT = Path(__file__).resolve().parents[1]
CORPUS = ROOT / "tests" / "corpus" / "valid"
GOLDEN = ROOT / "tests" / "golden"
OPTS = GenOptions("com.example.app", 5000, 60000)


def main():
    for src in sorted(CORPUS.glob("*.egen")):
        model, diags = parse(src.read_text(), src.name)
        diags += validate(model)
        assert not any(d.is_error for d in diags), (src, diags)
        for f in generate(model, OPTS):
            out = GOLDEN / src.stem / f.relative_path
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(f.contents)
            print(out.relative_to(ROOT))


if __name__ == "__main__":
    main()
