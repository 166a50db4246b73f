# Generated by Django 5.2.3

import uuid
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='RunRecord',
            fields=[
                ('id', models.UUIDField(default=uuid.uuid4, editable=False, help_text='Unique identifier for the run', primary_key=True, serialize=False)),
                ('command', models.CharField(db_index=True, help_text='Management command name', max_length=50)),
                ('command_line', models.TextField(help_text='Normalized command line')),
                ('config_hash', models.CharField(help_text='sha256 of the output-relevant settings', max_length=64)),
                ('input_digests', models.JSONField(blank=True, default=dict, help_text='sha256 of each catalog document read')),
                ('cache_key', models.CharField(db_index=True, help_text='Content address of the output', max_length=64)),
                ('payload', models.TextField(help_text='Rendered output')),
                ('wall_time', models.FloatField(help_text='Seconds spent')),
                ('cache_hit', models.BooleanField(default=False, help_text='Whether the output came from the cache')),
                ('created_at', models.DateTimeField(auto_now_add=True, help_text='When the command ran')),
            ],
            options={
                'ordering': ['-created_at'],
                'indexes': [models.Index(fields=['command', 'created_at'], name='runs_command_created_idx')],
            },
        ),
    ]
