# File: schemadl/services/__init__.py
"""Translation and reasoning services"""
from .evaluation_service import EvaluationService
from .search_engine import ModelSearchEngine
from .cardinality_analyzer import CardinalityAnalyzer
from .frame_service import FrameService
from .er_service import ERService
from .oo_service import OOService

__all__ = [
    'EvaluationService',
    'ModelSearchEngine',
    'CardinalityAnalyzer',
    'FrameService',
    'ERService',
    'OOService'
]
