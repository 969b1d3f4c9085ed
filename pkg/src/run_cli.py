import sys

from dotenv import load_dotenv

from cli import main
from core import configure_logging

load_dotenv()

if __name__ == "__main__":
    configure_logging()
    sys.exit(main())
