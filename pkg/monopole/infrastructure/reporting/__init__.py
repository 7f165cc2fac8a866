"""
Report output.
"""

from .writers import dumps_json, records_frame, write_csv, write_json

__all__ = ["dumps_json", "records_frame", "write_csv", "write_json"]
