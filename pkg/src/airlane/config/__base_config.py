import logging
from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict


# -------------------------------------------------
class AirlaneSettings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=Path(__file__).resolve().parent.parent / ".env",
        env_file_encoding="utf-8",
        extra="allow",  # a shared .env may carry other keys
    )
    AIRLANE_ENV: str = "dev"
    AIRLANE_LOG: str = "INFO"
    AIRLANE_SEED: int = 7
    AIRLANE_N_AIRCRAFT: int = 200
    AIRLANE_OUTPUT_DIR: Path = Path("airlane_output")

    # -------------------------------------------------
    @property
    def debug(self) -> bool:
        return self.AIRLANE_ENV == "dev"

    # -------------------------------------------------
    @property
    def log_level(self) -> int:
        level = logging.getLevelName(self.AIRLANE_LOG.upper())
        return level if isinstance(level, int) else logging.INFO


settings = AirlaneSettings()

# Logger
logger = logging.getLogger("airlane")
logger.setLevel(settings.log_level)
if not logger.handlers:
    _handler = logging.StreamHandler()
    _handler.setFormatter(
        logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s")
    )
    logger.addHandler(_handler)
logging.getLogger("matplotlib").setLevel(logging.WARNING)
logging.getLogger("shapely").setLevel(logging.WARNING)
