from hypothesis import given, strategies as st

from cohkit.rationals import rat
from cohkit.report import Report, parse_report, render


def test_render_shape():
    report = Report().add("command", "demo").add("count", 3)
    section = report.section("numbers")
    section.add("half", rat(1, 2))
    section.add("third", rat(1, 3))
    report.add("stakes", [rat(1), rat(-1)])
    text = render(report)
    assert text == (
        "command: demo\n"
        "count: 3\n"
        "numbers:\n"
        "  half: 1/2 (0.5)\n"
        "  third: 1/3 (0.333333333333)\n"
        "stakes: [1 (1), -1 (-1)]\n"
    )


def test_round_trip_recovers_exact_values():
    report = Report().add("value", rat(-7, 12)).add("note", "all good")
    nested = report.section("inner")
    nested.add("flag", True)
    nested.add("weights", [rat(2, 3), rat(1, 3)])
    again = parse_report(render(report))
    assert again == report
    assert again.get("value") == rat(-7, 12)
    assert again.get("inner").get("weights") == [rat(2, 3), rat(1, 3)]


scalar = st.one_of(
    st.integers(-100, 100),
    st.booleans(),
    st.text(
        alphabet=st.characters(whitelist_categories=("Ll", "Lu", "Nd"), whitelist_characters=" -_"),
        min_size=1,
        max_size=12,
    ).filter(lambda s: s.strip() == s and s not in ("yes", "no") and not s.isdigit()),
    st.builds(lambda n, d: rat(n, d), st.integers(-50, 50), st.integers(1, 50)),
)


def reports(depth=2):
    entry_values = scalar | st.lists(
        st.builds(lambda n, d: rat(n, d), st.integers(-20, 20), st.integers(1, 20)),
        max_size=3,
    )
    if depth > 0:
        entry_values = entry_values | st.deferred(lambda: report_trees(depth - 1))
    return entry_values


def report_trees(depth=2):
    keys = st.text(
        alphabet=st.characters(whitelist_categories=("Ll",), whitelist_characters="-"),
        min_size=1,
        max_size=8,
    )
    return st.builds(
        lambda entries: Report(entries),
        st.lists(st.tuples(keys, reports(depth)), min_size=1, max_size=4),
    )


@given(report_trees())
def test_round_trip_random_reports(report):
    assert parse_report(render(report)) == report
