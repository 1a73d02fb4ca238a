from .session import Options, parse_session, run_session, run_text

__all__ = ["Options", "parse_session", "run_session", "run_text"]
