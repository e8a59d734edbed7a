def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            props = dict(getattr(rep, "user_properties", ()))
            if "criterion" in props and rep.when == "call":
                lines.append((props["criterion"], props["verdict"]))
    if not lines:
        return
    order = {f"A{i}": i for i in range(1, 12)}
    lines.sort(key=lambda x: (order.get(x[0].split()[0], 99), x[0]))
    terminalreporter.section("acceptance criteria")
    for name, verdict in lines:
        terminalreporter.write_line(f"{name:<13} {verdict}")
