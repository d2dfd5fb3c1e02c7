from collections import defaultdict

_outcomes = defaultdict(list)

CRITERIA = {
    1: "weight spectrum at (2,1), (3,1), (2,2)",
    2: "per-codeword Lee weight agreement",
    3: "Griesmer optimality and gap identity",
    4: "minimal codewords",
    5: "nondegeneracy of the trace pairing",
    6: "dual Lee distance is 2",
    7: "regular unit action at (2,1)",
    8: "character sum identities",
    9: "secret sharing at (2,1)",
    10: "basis invariance at m=3, k=1",
}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if call.when == "call" or (call.when == "setup" and call.excinfo is not None):
        _outcomes[marker.args[0]].append((item.name, call.excinfo is None))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        results = _outcomes.get(n)
        if not results:
            continue
        failed = [name for name, ok in results if not ok]
        status = "FAIL" if failed else "PASS"
        line = f"AC{n:<2} {status}  {CRITERIA[n]} ({len(results) - len(failed)}/{len(results)})"
        if failed:
            line += "  failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
