from django.core.management.base import BaseCommand

from runs.models import RunRecord
from runs.rendering import FORMATS, Section, render
from runs.serializers import RunRecordSerializer


class Command(BaseCommand):
    help = "Recorded runs, newest first"

    def add_arguments(self, parser):
        parser.add_argument('--command', dest='command_name', help="Only runs of this command")
        parser.add_argument('--limit', type=int, default=20)
        parser.add_argument('--format', choices=FORMATS, default='table', help="Output format")

    def handle(self, *args, **options):
        records = RunRecord.objects.all()
        if options['command_name']:
            records = records.filter(command=options['command_name'])
        data = RunRecordSerializer(records[:options['limit']], many=True).data
        headers = ('created_at', 'command_line', 'inputs', 'cache_hit', 'wall_time', 'cache_key')
        rows = [
            (row['created_at'], row['command_line'], row['inputs'] or '-', row['cache_hit'], f"{row['wall_time']:.3f}", row['cache_key'][:12])
            for row in data
        ]
        self.stdout.write(render([Section('run', '', headers, rows, {'count': len(rows)})], options['format']), ending='')
