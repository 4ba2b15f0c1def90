from .app import create_app, load_data_dir, serve
from .reports import build_selection_report, points_for

__all__ = [
    "create_app",
    "load_data_dir",
    "serve",
    "build_selection_report",
    "points_for",
]
