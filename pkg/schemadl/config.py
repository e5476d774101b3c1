# File: schemadl/config.py
"""
Configuration settings for the schema toolkit.
Contains search budgets, solver selection, parser and logging settings.
Values can be overridden through environment variables or a .env file.
"""

import os

from dotenv import load_dotenv

load_dotenv()


def _env_bool(name, default):
    value = os.environ.get(name)
    if value is None:
        return default
    return value.strip().lower() in ('1', 'true', 'yes', 'on')


class Config:
    """Base configuration class"""

    DEBUG = False
    TESTING = False

    # Default search budget
    SEARCH_MIN_SIZE = int(os.environ.get('SCHEMADL_MIN_SIZE', 1))
    SEARCH_MAX_SIZE = int(os.environ.get('SCHEMADL_MAX_SIZE', 6))
    SEARCH_TIME_LIMIT = float(os.environ.get('SCHEMADL_TIME_LIMIT', 60.0))

    # Hard ceiling on domain sizes the searcher will try
    MAX_DOMAIN_SIZE = 64

    # SAT back end (pysat solver name and cardinality encoding)
    SAT_SOLVER = os.environ.get('SCHEMADL_SAT_SOLVER', 'm22')
    CARD_ENCODING = os.environ.get('SCHEMADL_CARD_ENCODING', 'seqcounter')

    # Conflict elimination may multiply the domain by 2^conflicts
    REPAIR_MAX_DOMAIN = int(os.environ.get('SCHEMADL_REPAIR_MAX_DOMAIN', 4096))

    # Parser
    AUTO_DECLARE = _env_bool('SCHEMADL_AUTO_DECLARE', True)

    # Reports
    JSON_INDENT = 2

    # Logging
    LOG_LEVEL = os.environ.get('SCHEMADL_LOG_LEVEL', 'WARNING')
    LOG_FORMAT = '%(log_color)s%(asctime)s - %(name)s - %(levelname)s%(reset)s - %(message)s'


class DevelopmentConfig(Config):
    """Development environment configuration"""
    DEBUG = True
    LOG_LEVEL = os.environ.get('SCHEMADL_LOG_LEVEL', 'DEBUG')


class TestingConfig(Config):
    """Testing environment configuration"""
    TESTING = True
    SEARCH_TIME_LIMIT = 60.0
    REPAIR_MAX_DOMAIN = 1024
    LOG_LEVEL = 'DEBUG'


class ProductionConfig(Config):
    """Production environment configuration"""
    LOG_LEVEL = os.environ.get('SCHEMADL_LOG_LEVEL', 'WARNING')


# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,
    'default': ProductionConfig
}


def get_config(config_name=None):
    """
    Select a configuration class.

    Args:
        config_name: development/testing/production, or None to read
            SCHEMADL_ENV (falls back to 'default')

    Returns:
        Configuration class
    """
    if config_name is None:
        config_name = os.getenv('SCHEMADL_ENV', 'default')
    return config.get(config_name, config['default'])
