from loguru import logger
import sys
from igames.config import settings

logger.remove()
# stderr keeps stdout free for the tables the CLI prints
logger.add(sys.stderr, level=settings.LOG_LEVEL, format="[{time}] {level} - {message}")
