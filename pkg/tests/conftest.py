
CRITERIA = {
    1: "Kostka agrees with brute-force tableaux (|lambda| <= 6)",
    2: "GT dimension fixtures",
    3: "strict Kostka zero for n = 1..9 and 22-point transcript, (4,3,2,1) / 1^10",
    4: "reciprocity at fresh points for >= 20 GT polytopes",
    5: "positivity sweep, lambda |- N <= 8, weight 1^N",
    6: "fence(10) h* by reciprocity and by linear extensions",
    7: "Stanley descent formula equals reciprocity h*",
    8: "permutation-poset h* fixtures in S_17",
    9: "neighborhood search around w0 (radius 3, avoiding 4321)",
    10: "Birkhoff B_3, B_4 symmetry, zeros and timing",
    11: "performance smoke",
    12: "S_28 permutation poset h*",
}

_outcomes = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            item.user_properties.append(("criterion", mark.args[0]))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or report.outcome != "passed":
        prev = _outcomes.get(crit, "PASS")
        if report.failed:
            state = "FAIL"
        elif report.skipped:
            state = "SKIP" if prev == "PASS" else prev
        else:
            state = prev
        _outcomes[crit] = state


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        state = _outcomes.get(n)
        if state is None:
            continue
        terminalreporter.write_line(f"criterion {n:2d} {state}: {title}")
