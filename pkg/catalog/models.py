"""Index of catalog documents.

The documents on disk are the source of truth; ``SpaceEntry`` rows record
what was ingested so listings can filter without parsing every file.
"""

import uuid

from django.db import models

from catalog.descriptors import SpaceKind


class SpaceEntry(models.Model):
    """One ingested catalog document.

    Fields
    ------
    id : UUIDField
        Primary key (auto-generated).
    name : CharField
        Space name as written in the document (unique).
    kind : CharField
        One of ``SpaceKind``.
    prime, height : PositiveSmallIntegerField
        The K(n) the document is written for.
    path : CharField
        Document file, relative to the catalog directory.
    document : TextField
        Document text at ingestion time.
    digest : CharField
        sha256 of ``document``.
    """

    id = models.UUIDField(
        primary_key=True,
        default=uuid.uuid4,
        editable=False,
        help_text="Unique identifier for the entry"
    )

    name = models.CharField(
        max_length=100,
        unique=True,
        help_text="Space name, e.g. S3 or BString-n2"
    )

    kind = models.CharField(
        max_length=32,
        choices=SpaceKind.choices,
        db_index=True,
        help_text="Kind of space"
    )

    prime = models.PositiveSmallIntegerField(
        default=2,
        help_text="The prime p"
    )

    height = models.PositiveSmallIntegerField(
        help_text="Chromatic height n"
    )

    path = models.CharField(
        max_length=255,
        help_text="Document file relative to the catalog directory"
    )

    document = models.TextField(
        help_text="Document text as ingested"
    )

    digest = models.CharField(
        max_length=64,
        help_text="sha256 of the document text"
    )

    created_at = models.DateTimeField(
        auto_now_add=True,
        help_text="When the entry was first ingested"
    )

    updated_at = models.DateTimeField(
        auto_now=True,
        help_text="When the entry was last ingested"
    )

    class Meta:
        verbose_name = "Space entry"
        verbose_name_plural = "Space entries"
        ordering = ['kind', 'name']

    def __str__(self):
        return self.name
