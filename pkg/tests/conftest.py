import pytest

from ortho7.field import FieldSpec, build_field, field_for


@pytest.fixture(scope="session")
def f5():
    return build_field(FieldSpec(5, 1, (0, 1)))


@pytest.fixture(scope="session")
def f11():
    return field_for(11)


@pytest.fixture(scope="session")
def f13():
    return field_for(13)


@pytest.fixture(scope="session")
def f25():
    return field_for(25)


@pytest.fixture(scope="session")
def f27():
    return field_for(27)


@pytest.fixture(scope="session")
def f49():
    return field_for(49)
