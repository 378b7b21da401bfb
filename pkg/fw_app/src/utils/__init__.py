from .fs import mkdir, ensure_parent
from .reports import format_number, format_exact, render_csv, render_json, emit
from .utils import load_config
