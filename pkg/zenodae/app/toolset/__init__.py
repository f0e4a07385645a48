"""
Toolset package for the experiment suites
"""

from .dilation_suite_tool import DilationSuiteTool
from .zeno_suite_tool import ZenoSuiteTool
from .stokes_suite_tool import StokesSuiteTool
from .gauss_suite_tool import GaussSuiteTool
from .rlc_suite_tool import RlcSuiteTool
from .cost_suite_tool import CostSuiteTool
from .tools import (
    TOOLS,
    get_tool,
    list_available_tools,
    get_cache_stats,
    clear_operator_cache
)

__all__ = [
    'DilationSuiteTool',
    'ZenoSuiteTool',
    'StokesSuiteTool',
    'GaussSuiteTool',
    'RlcSuiteTool',
    'CostSuiteTool',
    'TOOLS',
    'get_tool',
    'list_available_tools',
    'get_cache_stats',
    'clear_operator_cache'
]
