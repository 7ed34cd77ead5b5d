import numpy as np
import pytest

from trichemo import (
    Field,
    Grid,
    field_from_function,
    full_field,
    integrate,
    make_grid,
    make_grid_from_spacing,
    read_field_csv,
    write_field_csv,
)

TWO_PI = 2.0 * np.pi


def test_spacing_from_domain():
    g = make_grid(3, 3, 1.0, 1.0)
    assert g.dx == 0.5
    assert g.dy == 0.5
    g13 = make_grid(13, 13, TWO_PI, TWO_PI)
    assert g13.dx == pytest.approx(TWO_PI / 12, rel=1e-15)
    assert g13.shape == (13, 13)


def test_domain_from_spacing():
    g = make_grid_from_spacing(13, 13, 0.5, 0.5)
    assert g.lx == 6.0
    assert g.ly == 6.0
    assert g.dx == 0.5


def test_grid_rejects_degenerate():
    with pytest.raises(ValueError):
        make_grid(2, 13, 1.0, 1.0)
    with pytest.raises(ValueError):
        make_grid(13, 13, 0.0, 1.0)
    with pytest.raises(ValueError):
        make_grid(13, 13, 1.0, -2.0)
    with pytest.raises(ValueError):
        make_grid_from_spacing(13, 13, 0.5, 0.0)


def test_node_coordinates():
    g = make_grid(5, 4, 4.0, 3.0)
    assert np.array_equal(g.x(), [0.0, 1.0, 2.0, 3.0, 4.0])
    assert np.array_equal(g.y(), [0.0, 1.0, 2.0, 3.0])
    xx, yy = g.meshgrid()
    assert xx.shape == (4, 5)
    assert xx[0, 2] == 2.0 and yy[3, 0] == 3.0


def test_integrate_constant_is_area():
    g = make_grid(3, 3, 1.0, 1.0)
    assert integrate(full_field(g, 1.0)) == pytest.approx(1.0, abs=1e-15)
    g2 = make_grid(13, 17, TWO_PI, 3.0)
    assert integrate(full_field(g2, 2.0)) == pytest.approx(2.0 * TWO_PI * 3.0, rel=1e-14)


def test_integrate_linear_exact():
    # trapezoid quadrature integrates linear data exactly: f = x on the
    # unit square has integral 1/2
    g = make_grid(3, 3, 1.0, 1.0)
    f = field_from_function(g, lambda x, y: x)
    assert integrate(f) == pytest.approx(0.5, abs=1e-15)


def test_integrate_oscillatory_cancels():
    g = make_grid(13, 13, TWO_PI, TWO_PI)
    f = field_from_function(g, lambda x, y: np.cos(x) * np.cos(y))
    assert abs(integrate(f)) < 1e-10


def test_integrate_linearity():
    g = make_grid(9, 7, 2.0, 3.0)
    rng = np.random.default_rng(7)
    a = Field(g, rng.normal(size=g.shape))
    b = Field(g, rng.normal(size=g.shape))
    lhs = integrate(Field(g, 2.5 * a.values - 0.7 * b.values))
    rhs = 2.5 * integrate(a) - 0.7 * integrate(b)
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_quad_weights_pattern():
    g = make_grid(4, 3, 1.0, 1.0)
    w = g.quad_weights()
    assert w[0, 0] == 0.25 and w[0, -1] == 0.25
    assert w[0, 1] == 0.5 and w[1, 0] == 0.5
    assert w[1, 1] == 1.0


def test_field_shape_mismatch():
    g = make_grid(3, 3, 1.0, 1.0)
    with pytest.raises(ValueError, match="shape"):
        Field(g, np.zeros((3, 4)))


def test_field_rejects_non_finite():
    g = make_grid(3, 3, 1.0, 1.0)
    vals = np.ones(g.shape)
    vals[1, 2] = np.nan
    with pytest.raises(ValueError, match=r"\(i=2, j=1\)"):
        Field(g, vals)


def test_field_is_detached_and_frozen():
    g = make_grid(3, 3, 1.0, 1.0)
    src = np.ones(g.shape)
    f = Field(g, src)
    src[0, 0] = 99.0
    assert f.values[0, 0] == 1.0
    with pytest.raises(ValueError):
        f.values[0, 0] = 2.0


def test_field_extrema_helpers():
    g = make_grid(3, 3, 1.0, 1.0)
    f = Field(g, np.array([[1.0, 2.0, 3.0]] * 3) - 2.5)
    assert f.min() == -1.5
    assert f.max() == 0.5
    assert f.linf() == 1.5


def test_csv_round_trip_exact(tmp_path):
    g = make_grid(7, 5, TWO_PI, 1.3)
    rng = np.random.default_rng(3)
    f = Field(g, np.exp(rng.normal(size=g.shape)))
    path = tmp_path / "snap_u_t12.5.csv"
    write_field_csv(path, f, 12.5)
    back, t = read_field_csv(path)
    assert t == 12.5
    assert back.grid == g
    assert np.array_equal(back.values, f.values)


def test_csv_header_format(tmp_path):
    g = make_grid(3, 3, 1.0, 2.0)
    path = tmp_path / "s.csv"
    write_field_csv(path, full_field(g, 1.0), 10.0)
    first = path.read_text().splitlines()[0]
    assert first == "# nx=3 ny=3 lx=1 ly=2 t=10"


def test_csv_write_is_deterministic(tmp_path):
    g = make_grid(5, 5, 1.0, 1.0)
    rng = np.random.default_rng(11)
    f = Field(g, rng.normal(size=g.shape))
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    write_field_csv(p1, f, 3.0)
    write_field_csv(p2, f, 3.0)
    assert p1.read_bytes() == p2.read_bytes()


def test_csv_rejects_malformed(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("nonsense\n1,2\n")
    with pytest.raises(ValueError, match="header"):
        read_field_csv(p)
    p2 = tmp_path / "short.csv"
    p2.write_text("# nx=3 ny=3 lx=1 ly=1 t=0\n1,2,3\n4,5,6\n")
    with pytest.raises(ValueError, match="rows"):
        read_field_csv(p2)
