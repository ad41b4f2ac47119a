import logging
import sys

logging.basicConfig(stream=sys.stdout, level=logging.INFO)
__version__ = '0.1.0'
