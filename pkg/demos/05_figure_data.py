"""
Regenerating figure data
========================

Each figure's data comes out of ``reproduce_figure`` as tables. The CLI
``eurdyn figure <id> --out DIR`` writes the same tables as CSV files.
"""

from eurdyn.config import FigureConfig, RunConfig
from eurdyn.tasks import reproduce_figure

for fid in (2, 4, 5, 6, 7, 8):
    cfg = RunConfig(task="figure", figure=FigureConfig(id=fid, n_grid=21 if fid in (6, 8) else None))
    for table in reproduce_figure(fid, cfg):
        print(f"{table.name}: {len(table.data)} rows, columns {', '.join(table.columns)}")
        for note in table.notes:
            print("   ", note)
