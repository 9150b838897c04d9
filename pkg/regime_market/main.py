# regime_market/main.py

from regime_market.cli.main_cli import app


def main() -> None:
    app()


if __name__ == "__main__":
    main()
