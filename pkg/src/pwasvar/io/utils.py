"""Utility function to build file paths for artifacts, ensuring directories are created if needed."""

# Authors: pwasvar contributors
# License: BSD 3-clause

import os


def build_artifact_path(output_directory: str, runner_name: str, experiment_name: str, name: str, ext: str = "") -> str:
    """
    Build and return an artifact file path, ensuring the directory exists.

    Parameters
    ----------
    output_directory : str
        The root directory where the file will be saved.
    runner_name : str
        The name of the runner or CLI command.
    experiment_name : str
        The name of the experiment; artifacts go to a subdirectory of that name.
    name : str
        The name of the artifact.
    ext : str, optional
        The file extension to use (e.g., ".csv"). If not provided, the default is an empty string.

    Returns
    -------
    str
        The full file path including the directory, filename, and extension.
    """
    directory = os.path.join(output_directory, experiment_name)
    try:
        os.makedirs(directory, exist_ok=True)
    except OSError as e:
        raise OSError(f"Failed to create directory '{directory}': {e}") from e

    if ext and not ext.startswith("."):
        ext = f".{ext}"

    filename = f"{runner_name.lower()}__{experiment_name}__{name}{ext}"
    return os.path.join(directory, filename)
