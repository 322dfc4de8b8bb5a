from .saving import format_float, load_csv, load_json, load_yaml, make_dirs, save_csv, save_json, to_jsonable
