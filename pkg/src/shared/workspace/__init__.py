from .parse_workspace import build_workspace, load_document, parse_workspace
from .types import ParseError, ValidationError, Workspace, WorkspaceError

__all__ = [
    "WorkspaceError",
    "ParseError",
    "ValidationError",
    "Workspace",
    "parse_workspace",
    "load_document",
    "build_workspace",
]
