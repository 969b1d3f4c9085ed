from cli.cli import build_config, build_parser, main

__all__ = ["build_config", "build_parser", "main"]
