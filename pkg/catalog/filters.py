import django_filters

from .models import SpaceEntry


class SpaceEntryFilter(django_filters.FilterSet):
    """Filter ingested catalog entries by kind, prime, height and name."""

    class Meta:
        model = SpaceEntry
        fields = {
            'name': ['exact', 'icontains'],
            'kind': ['exact'],
            'prime': ['exact'],
            'height': ['exact', 'gte', 'lte'],
        }
