"""
PDF Export for Benchmark Runs
"""

from datetime import datetime
from typing import List, Optional

try:
    from reportlab.lib import colors
    from reportlab.lib.enums import TA_CENTER
    from reportlab.lib.pagesizes import letter
    from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
    from reportlab.lib.units import inch
    from reportlab.platypus import Paragraph, Preformatted, SimpleDocTemplate, Spacer, Table, TableStyle
    REPORTLAB_AVAILABLE = True
except ImportError:
    REPORTLAB_AVAILABLE = False

from .harness import COLUMNS, RunMetrics

MAX_TABLE_ROWS = 60


class RunPDFExporter:
    """Summary page plus checkpoint table for one or more runs."""

    def __init__(self, output_path: Optional[str] = None):
        if not REPORTLAB_AVAILABLE:
            raise ImportError(
                "reportlab is required for PDF export. Install it with: pip install reportlab"
            )
        if output_path:
            self.output_path = output_path
        else:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            self.output_path = f"colouring_run_{timestamp}.pdf"

        self.story = []
        self.styles = getSampleStyleSheet()
        self.styles.add(ParagraphStyle(
            name='RunTitle',
            parent=self.styles['Heading1'],
            fontSize=20,
            textColor='#1a1a1a',
            spaceAfter=12,
            alignment=TA_CENTER,
        ))
        self.styles.add(ParagraphStyle(
            name='RunSection',
            parent=self.styles['Heading2'],
            fontSize=14,
            textColor='#2c3e50',
            spaceBefore=12,
            spaceAfter=6,
        ))
        self.styles.add(ParagraphStyle(
            name='RunMono',
            parent=self.styles['Code'],
            fontSize=7,
            leading=9,
        ))

    def add_run(self, metrics: RunMetrics):
        verdict = "PASS" if metrics.ok else "FAIL"
        self.story.append(Paragraph(
            f"{metrics.algo} on {metrics.label or 'stream'} ({verdict})",
            self.styles['RunSection'],
        ))
        # the text report uses emoji the base fonts lack
        summary = metrics.format_report().encode('ascii', 'ignore').decode()
        self.story.append(Preformatted(summary, self.styles['RunMono']))
        self.story.append(Spacer(1, 0.15 * inch))
        self.story.append(self._table(metrics))

    def _table(self, metrics: RunMetrics) -> "Table":
        frame = metrics.to_frame()
        if len(frame) > MAX_TABLE_ROWS:
            # keep the shape of the run: evenly spaced rows plus the last one
            stride = -(-len(frame) // MAX_TABLE_ROWS)
            frame = frame.iloc[list(range(0, len(frame) - 1, stride)) + [len(frame) - 1]]
        header = [c.replace('_', ' ') for c in COLUMNS]
        body: List[List[str]] = []
        for record in frame.itertuples(index=False):
            body.append([
                f"{value:.3f}" if isinstance(value, float) else str(value)
                for value in record
            ])
        table = Table([header] + body, repeatRows=1)
        table.setStyle(TableStyle([
            ('FONTSIZE', (0, 0), (-1, -1), 6),
            ('BACKGROUND', (0, 0), (-1, 0), colors.HexColor('#2c3e50')),
            ('TEXTCOLOR', (0, 0), (-1, 0), colors.white),
            ('GRID', (0, 0), (-1, -1), 0.25, colors.grey),
            ('ROWBACKGROUNDS', (0, 1), (-1, -1), [colors.white, colors.HexColor('#f4f6f7')]),
        ]))
        return table

    def export(self) -> str:
        doc = SimpleDocTemplate(
            self.output_path,
            pagesize=letter,
            rightMargin=0.5 * inch,
            leftMargin=0.5 * inch,
            topMargin=0.6 * inch,
            bottomMargin=0.6 * inch,
        )
        title = [
            Paragraph("Edge Colouring Benchmark", self.styles['RunTitle']),
            Paragraph(datetime.now().strftime("Generated %Y-%m-%d %H:%M"), self.styles['Normal']),
            Spacer(1, 0.2 * inch),
        ]
        doc.build(title + self.story)
        return self.output_path


def export_run_to_pdf(runs, output_path: Optional[str] = None) -> str:
    """
    Export one RunMetrics (or a list of them) to PDF.

    Returns the path of the generated file.
    """
    exporter = RunPDFExporter(output_path)
    for metrics in (runs if isinstance(runs, list) else [runs]):
        exporter.add_run(metrics)
    return exporter.export()
