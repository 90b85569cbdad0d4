#!/usr/bin/env python3
"""
Kit Configuration
JSON settings file and logging setup shared by the CLI and the batch scripts
"""

import json
import logging
import os
import sys
from dataclasses import asdict, dataclass, fields
from typing import Optional

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_FILE = 'kit_config.json'
LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'
LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')


class ConfigError(ValueError):
    pass


@dataclass
class KitConfig:
    log_level: str = 'WARNING'
    log_file: Optional[str] = None
    json_output: bool = False
    fig1_template: Optional[str] = None
    batch_workers: int = 4
    reports_dir: str = 'reports'

    def validate(self):
        if self.log_level not in LOG_LEVELS:
            raise ConfigError(f"log_level must be one of {', '.join(LOG_LEVELS)}, got {self.log_level!r}")
        if not isinstance(self.json_output, bool):
            raise ConfigError("json_output must be true or false")
        if isinstance(self.batch_workers, bool) or not isinstance(self.batch_workers, int) \
                or self.batch_workers < 1:
            raise ConfigError(f"batch_workers must be a positive integer, got {self.batch_workers!r}")
        for key in ('log_file', 'fig1_template'):
            value = getattr(self, key)
            if value is not None and not isinstance(value, str):
                raise ConfigError(f"{key} must be a path or null")
        if not isinstance(self.reports_dir, str):
            raise ConfigError("reports_dir must be a path")
        return self

    def to_dict(self):
        return asdict(self)


def load_config(path=DEFAULT_CONFIG_FILE):
    """Read the JSON config; a missing file gives the defaults"""
    if not os.path.exists(path):
        logger.warning(f"Config file {path} not found, using defaults")
        return KitConfig()
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must hold a JSON object")

    known = {f.name for f in fields(KitConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    config = KitConfig(**data).validate()
    logger.debug(f"Loaded config from {path}")
    return config


def setup_logging(level='WARNING', log_file=None):
    """Log to stderr and, when asked, to a file under logs/"""
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        if not os.path.dirname(log_file):
            os.makedirs('logs', exist_ok=True)
            log_file = os.path.join('logs', log_file)
        else:
            os.makedirs(os.path.dirname(log_file), exist_ok=True)
        handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )
