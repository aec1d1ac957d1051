"""
Tests for ring catalogs
"""

import pytest

from src.core.exceptions import CatalogError, InvalidDescriptor, RingLabError, SizeCapExceeded
from src.models.descriptors import Idealize, Product, TruncPoly, Zn
from src.services.catalog import default_catalog, load_catalog, parse_catalog
from src.utils.ring_spec import render


def test_default_catalog_contents():
    catalog = default_catalog()
    assert len(catalog) == 63 + 64 + 1 + 4 + 5
    assert catalog[0] == Zn(n=2)
    assert catalog[62] == Zn(n=64)
    assert catalog[63] == Product(factors=(Zn(n=2), Zn(n=2)))
    assert sum(isinstance(d, TruncPoly) for d in catalog) == 4
    assert catalog[-1] == Idealize(n=9, m=3)


def test_parse_catalog_skips_comments_and_blanks():
    lines = ["# chain rings", "Z8", "", "  Z32  # sixteen is N-prime"]
    assert [render(d) for d in parse_catalog(lines)] == ["Z8", "Z32"]


def test_parse_catalog_reports_line():
    with pytest.raises(CatalogError) as exc_info:
        parse_catalog(["Z4(+)Z3"])
    assert exc_info.value.line == 1
    assert isinstance(exc_info.value.cause, InvalidDescriptor)


def test_out_of_range_quotient_generator_reports_line():
    with pytest.raises(CatalogError) as exc_info:
        parse_catalog(["Z8", "# quotients", "Z8/<9>"])
    assert exc_info.value.line == 3
    assert isinstance(exc_info.value.cause, InvalidDescriptor)


def test_over_cap_ring_reports_line(settings):
    capped = settings.model_copy(update={"size_cap": 64})
    with pytest.raises(CatalogError) as exc_info:
        parse_catalog(["Z8", "Z8 x Z9"], capped)
    assert exc_info.value.line == 2
    assert isinstance(exc_info.value.cause, SizeCapExceeded)


def test_catalog_file_over_default_cap(tmp_path):
    path = tmp_path / "rings.txt"
    path.write_text("Z8\nZ5000\n", encoding="utf-8")
    with pytest.raises(CatalogError) as exc_info:
        load_catalog(str(path))
    assert exc_info.value.line == 2


def test_load_catalog_file(tmp_path):
    path = tmp_path / "rings.txt"
    path.write_text("Z8\nZ32\n", encoding="utf-8")
    assert load_catalog(str(path)) == [Zn(n=8), Zn(n=32)]


def test_load_catalog_default():
    assert load_catalog() == default_catalog()


def test_empty_catalog_file(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("# nothing here\n", encoding="utf-8")
    with pytest.raises(RingLabError):
        load_catalog(str(path))
