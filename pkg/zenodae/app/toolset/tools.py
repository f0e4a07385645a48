# zenodae/app/toolset/tools.py - Suite registry and utilities

from .dilation_suite_tool import DilationSuiteTool
from .zeno_suite_tool import ZenoSuiteTool
from .stokes_suite_tool import StokesSuiteTool
from .gauss_suite_tool import GaussSuiteTool
from .rlc_suite_tool import RlcSuiteTool
from .cost_suite_tool import CostSuiteTool
from .operator_cache import operator_cache

# Suite registry keyed by the config's suite value
TOOLS = {
    'dilate': DilationSuiteTool(),
    'zeno': ZenoSuiteTool(),
    'stokes': StokesSuiteTool(),
    'gauss': GaussSuiteTool(),
    'rlc': RlcSuiteTool(),
    'cost': CostSuiteTool(),
}


def get_tool(tool_name: str):
    """Get a suite tool by name"""
    return TOOLS.get(tool_name)


def list_available_tools():
    """List all available suites"""
    return list(TOOLS.keys())


def get_cache_stats():
    """Get operator cache statistics"""
    return operator_cache.get_stats()


def clear_operator_cache():
    """Clear the operator cache"""
    operator_cache.clear()
    return "Operator cache cleared successfully"
