# Generated by Django 5.2.3

import uuid
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='SpaceEntry',
            fields=[
                ('id', models.UUIDField(default=uuid.uuid4, editable=False, help_text='Unique identifier for the entry', primary_key=True, serialize=False)),
                ('name', models.CharField(help_text='Space name, e.g. S3 or BString-n2', max_length=100, unique=True)),
                ('kind', models.CharField(choices=[('em-integral', 'Eilenberg-MacLane space K(Z, q)'), ('em-mod-p', 'Eilenberg-MacLane space K(Z/k, q)'), ('sphere', 'Sphere'), ('finite-complex', 'Finite complex'), ('structural-cover', 'Connected cover'), ('steenrod-ring', 'Mod-2 cohomology ring')], db_index=True, help_text='Kind of space', max_length=32)),
                ('prime', models.PositiveSmallIntegerField(default=2, help_text='The prime p')),
                ('height', models.PositiveSmallIntegerField(help_text='Chromatic height n')),
                ('path', models.CharField(help_text='Document file relative to the catalog directory', max_length=255)),
                ('document', models.TextField(help_text='Document text as ingested')),
                ('digest', models.CharField(help_text='sha256 of the document text', max_length=64)),
                ('created_at', models.DateTimeField(auto_now_add=True, help_text='When the entry was first ingested')),
                ('updated_at', models.DateTimeField(auto_now=True, help_text='When the entry was last ingested')),
            ],
            options={
                'verbose_name': 'Space entry',
                'verbose_name_plural': 'Space entries',
                'ordering': ['kind', 'name'],
            },
        ),
    ]
