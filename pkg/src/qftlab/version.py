"""Version information for qftlab."""


def version():
    """Return the current version of qftlab."""
    return "0.1.0"


def print_version(args):
    """Print the version information."""
    if args.quiet:
        print(version())
    else:
        print(f"qftlab version {version()}")
