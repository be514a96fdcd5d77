def test_import_main():
    """Verify the command-line entrypoint imports without side effects."""
    import pentacrystal.main  # noqa: F401


def test_import_cli_app():
    """Verify every verb module is wired into the parser."""
    from pentacrystal.cli.app import build_parser

    parser = build_parser()
    args = parser.parse_args(["coxeter", "order", "--m", "5", "--augmented"])
    assert args.verb == "coxeter" and args.augmented and args.m == 5
