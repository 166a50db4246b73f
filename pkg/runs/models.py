import uuid

from django.db import models


class RunRecord(models.Model):
    """One execution of a computing command.

    Fields
    ------
    id : UUIDField
        Primary key (auto-generated).
    command : CharField
        Management command name, e.g. ``twisted_em``.
    command_line : TextField
        Normal form of the command line: the command and its sorted options.
    config_hash : CharField
        sha256 of the settings that reach the output.
    input_digests : JSONField
        ``{document name: sha256}`` of every catalog document read.
    cache_key : CharField
        sha256 of the command line, the input digests and the engine version.
    payload : TextField
        Rendered output.
    wall_time : FloatField
        Seconds spent, including cache lookups.
    cache_hit : BooleanField
        Whether the payload came from the result cache.
    """

    id = models.UUIDField(
        primary_key=True,
        default=uuid.uuid4,
        editable=False,
        help_text="Unique identifier for the run"
    )

    command = models.CharField(
        max_length=50,
        db_index=True,
        help_text="Management command name"
    )

    command_line = models.TextField(
        help_text="Normalized command line"
    )

    config_hash = models.CharField(
        max_length=64,
        help_text="sha256 of the output-relevant settings"
    )

    input_digests = models.JSONField(
        default=dict,
        blank=True,
        help_text="sha256 of each catalog document read"
    )

    cache_key = models.CharField(
        max_length=64,
        db_index=True,
        help_text="Content address of the output"
    )

    payload = models.TextField(
        help_text="Rendered output"
    )

    wall_time = models.FloatField(
        help_text="Seconds spent"
    )

    cache_hit = models.BooleanField(
        default=False,
        help_text="Whether the output came from the cache"
    )

    created_at = models.DateTimeField(
        auto_now_add=True,
        help_text="When the command ran"
    )

    class Meta:
        ordering = ['-created_at']
        indexes = [
            models.Index(fields=['command', 'created_at'], name='runs_command_created_idx'),
        ]

    def __str__(self):
        return f"{self.command_line} ({'cached' if self.cache_hit else f'{self.wall_time:.3f}s'})"
