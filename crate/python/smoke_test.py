"""Smoke test for the htlp Python extension.

Run from the repository root after building the extension, e.g.

    cargo build --release -p htlp-python --features extension-module
    cp target/release/libhtlp.so python/htlp.so
    python3 python/smoke_test.py
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import htlp  # noqa: E402

OR_RULE = "(q -> p) | r"


def main():
    assert htlp.parse("(q -> p) | r") == "(q -> p) | r"
    assert htlp.parse("p -> bot") == "~p"

    cms = htlp.countermodels(OR_RULE)
    assert cms == ["∅ | q", "q | q", "q | p q", "∅ | q r", "q | q r", "q | p q r"], cms
    assert len(htlp.models(OR_RULE)) == 21

    assert htlp.equilibrium("p | q") == [["p"], ["q"]]
    assert htlp.equilibrium("p", signature=["q"]) == [["p"]]

    rules = htlp.to_program(OR_RULE)
    assert rules[1] == "q & ~p & ~r -> bot", rules
    assert htlp.to_program("r -> (q -> p)", method="syntactic", simplify=True) == ["q & r -> p"]

    assert htlp.to_dnf("bot") == "bot"
    assert htlp.to_dnf(OR_RULE).startswith("~p & ~q & ~r | ")

    assert htlp.check_equiv(OR_RULE, "q -> p | r\n~p -> ~q | r") is None
    assert htlp.check_equiv("p | ~p", "top") == "∅ | p"

    assert [htlp.count(n) for n in range(4)] == [2, 6, 162, 5078214]
    assert htlp.count(3, brute_force=True) == 5078214

    try:
        htlp.models("p &")
    except htlp.ParseError as e:
        assert "syntax error" in str(e)
    else:
        raise AssertionError("parse error not raised")
    try:
        htlp.models(OR_RULE, cap=2)
    except htlp.CapExceeded:
        pass
    else:
        raise AssertionError("cap not enforced")

    print("smoke test passed")


if __name__ == "__main__":
    main()
