"""
Data collection for reports and experiments.
Reports append rows to named tables, which are handed out as pandas data frames for printing and further analysis.
"""
from typing import Any

import pandas as pd

class TableCollector:
    """
    Collects rows into named tables with fixed columns.
    """

    def __init__(self, tables: dict[str, list[str]]):
        """
        Creates a collector with one empty table per name.

        Args:
            tables (dict[str, list[str]]): the column names of each table.
        """
        self.tables: dict[str, dict[str, list[Any]]] = {name: {column: [] for column in columns} for name, columns in tables.items()}

    def add_row(self, table_name: str, **values: Any):
        """
        Appends a row to a table. Columns not given are filled with None.

        Args:
            table_name (str): the name of the table.
            **values (Any): the values by column name.
        """
        table = self.tables[table_name]
        unknown = set(values) - set(table)
        if unknown:
            raise KeyError(f"unknown columns {sorted(unknown)} for table {table_name}")
        for column, entries in table.items():
            entries.append(values.get(column))

    def has_rows(self, table_name: str = "") -> bool:
        """
        Returns True if and only if the table with the given name contains any rows.
        If no table name is given, it returns True if any of the tables contains a row.

        Args:
            table_name (str): the name of the table.

        Returns:
            bool: True if and only if the table (or any of the tables) contains any rows.
        """
        if table_name:
            return any(len(entries) > 0 for entries in self.tables[table_name].values())
        return any(self.has_rows(name) for name in self.tables)

    def get_table_dataframe(self, table_name: str) -> pd.DataFrame:
        """
        Returns a table as a data frame.

        Args:
            table_name (str): the name of the table.

        Returns:
            pd.DataFrame: the table, one row per collected row.
        """
        return pd.DataFrame(self.tables[table_name])
