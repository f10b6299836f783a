import numpy as np

from ._version import __version__


def _cell(value, width):
    if isinstance(value, (float, np.floating)):
        return f"{value:>{width}.6f}"
    return f"{str(value):>{width}}"


def print_table_string(header, rows, title=None, width=12):
    """Formats a table for Logging or Printing

    Parameters
    ----------
    header : list of str
    rows : list of lists
        floats are printed with 6 decimals, anything else with str()
    title : string, optional

    Returns
    -------
    string
    """
    rule = "\t" + "-" * (width + 1) * len(header) + "\n"
    s = "\n"
    if title is not None:
        s += f"\t{title}\n\n"
    s += rule
    s += "\t" + " ".join(f"{h:>{width}}" for h in header) + "\n"
    s += rule
    for row in rows:
        s += "\t" + " ".join(_cell(v, width) for v in row) + "\n"
    s += rule
    return s


def print_report_string(report):
    """Human readable summary of a ValidationReport"""
    s = "\n\t==> Validation Summary <==\n\n"
    s += f"\tm = {report.m}, d = {report.d}\n"
    s += f"\tnnc (k={report.k}, {report.mode}) = {report.nnc:12.6f}\n"
    s += f"\t    T1 = {report.t1:.6f}  T2 = {report.t2:.6f}  E[T] = {report.expected_t:.6f}\n"
    s += f"\tmr (rho={report.rho}, {report.boundary}) = {report.mr:12.6f}"
    s += f"  ({report.memorized_count} memorized, null limit {report.mr_limit:.6f})\n"
    if report.tie_count:
        s += f"\tties at the k-th neighbour: {report.tie_count}\n"
    if report.empirical_duplicates:
        s += f"\tduplicated empirical points: {report.empirical_duplicates}\n"
    return s


def welcome():
    welcome_string = f"""
    \t\t\t-----------------------------------------\n
    \t\t\t  SCENVAL {__version__}: validation of scenario   \n
    \t\t\t   generators by nearest neighbour tests  \n
    \t\t\t-----------------------------------------\n
    """
    return welcome_string
