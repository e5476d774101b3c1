# File: schemadl/__init__.py
"""
Schema toolkit package.
Translates frame, Entity-Relationship and object-oriented schemas into
description-logic knowledge bases and reasons over them with a bounded
finite-model finder and a cardinality analyzer.
"""
import logging

import colorlog

__version__ = '1.0.0'


def configure_logging(app_config):
    """
    Configure package logging.

    Installs a single colored handler on stderr; reports produced by the
    command line go to stdout and never pass through logging.

    Args:
        app_config: Configuration class (see schemadl.config)
    """
    handler = colorlog.StreamHandler()
    handler.setFormatter(colorlog.ColoredFormatter(app_config.LOG_FORMAT))

    root = logging.getLogger('schemadl')
    root.handlers[:] = [handler]
    root.setLevel(getattr(logging, app_config.LOG_LEVEL.upper(), logging.WARNING))
    root.propagate = False
    return root
