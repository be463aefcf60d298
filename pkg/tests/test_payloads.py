import pytest

from app.Models.Payloads import load_run_config, make_solver_config, parse_coefficient, parse_run_config
from app.Models.ProblemModel import BcMode
from app.Utils.errors import ConfigError

RUN_FILE = """
# regime comparison run
epsilon = 0.1
scheme = emm
ny = 16
t_end = 0.02   # short horizon
coeff = paper
bc = dirichlet_homogeneous
output = results/eps0.1
"""


def test_parse_run_config():
    cfg = parse_run_config(RUN_FILE)
    assert cfg.epsilon == 0.1
    assert cfg.nx == 64
    assert cfg.t_end == 0.02
    assert cfg.bc is BcMode.DIRICHLET_HOMOGENEOUS
    assert cfg.output == 'results/eps0.1'
    assert cfg.macro_update == 'duhamel'


def test_ref_defaults_to_fine_mesh():
    cfg = parse_run_config('epsilon=1\nscheme=ref\n')
    assert cfg.nx == 1024
    assert cfg.solver_config().dt_factor == 0.05


def test_unknown_key_is_an_error():
    with pytest.raises(ConfigError):
        parse_run_config('epsilon=0.1\nsteps=10\n')


def test_missing_separator_is_an_error():
    with pytest.raises(ConfigError, match='expected key=value'):
        parse_run_config('epsilon 0.1\n')


def test_duplicate_key_is_an_error():
    with pytest.raises(ConfigError, match='duplicate'):
        parse_run_config('epsilon=0.1\nepsilon=0.2\n')


@pytest.mark.parametrize('text', ['epsilon=0\n', 'epsilon=2\n', 'epsilon=0.1\nscheme=fem\n',
                                  'epsilon=0.1\ncoeff=wavy\n', 'epsilon=0.1\ncoeff=constant:-1\n',
                                  'epsilon=0.1\nbc=neumann\n'])
def test_invalid_values(text):
    with pytest.raises(ConfigError):
        parse_run_config(text)


def test_constant_coefficient_parsing():
    a = parse_coefficient('constant:2.5')
    assert (a.a_min, a.a_max) == (2.5, 2.5)
    assert parse_coefficient(' paper ').name == 'paper'
    assert parse_coefficient('benchmark').name == 'paper'


def test_run_problem_uses_configured_coefficient():
    spec = parse_run_config('epsilon=0.5\ncoeff=constant:2\n').problem()
    assert spec.coefficient.a_max == 2.0
    assert spec.epsilon == 0.5


def test_solver_config_defaults():
    emm = make_solver_config(scheme='emm', n_x=64, t_end=0.02, epsilon=0.1)
    assert emm.dt_factor == 0.2
    assert emm.dt == pytest.approx(0.2 / 64 ** 2)
    assert make_solver_config(scheme='ref', n_x=64, t_end=0.02, epsilon=0.1).dt_factor == 0.05
    assert make_solver_config(scheme='hmm', n_x=64, t_end=0.02, epsilon=0.1, dt_factor=0.1).dt_factor == 0.1


def test_solver_config_rejects_odd_cell_mesh():
    with pytest.raises(ConfigError):
        make_solver_config(scheme='emm', n_x=64, n_y=15, t_end=0.02, epsilon=0.1)


def test_output_times_sorted():
    cfg = make_solver_config(scheme='emm', n_x=16, t_end=0.02, epsilon=0.1, output_times=(0.01, 0.0))
    assert cfg.output_times == (0.0, 0.01)


def test_load_run_config(tmp_path):
    path = tmp_path / 'run.cfg'
    path.write_text(RUN_FILE)
    assert load_run_config(path).epsilon == 0.1


def test_load_missing_file(tmp_path):
    with pytest.raises(ConfigError) as info:
        load_run_config(tmp_path / 'absent.cfg')
    assert info.value.exit_code == 2


def test_run_file_accepts_paper_coefficient():
    run = parse_run_config('epsilon=0.1\ncoeff=paper\n')
    assert run.coeff == 'paper'
    assert run.problem().coefficient.name == 'paper'
    assert parse_run_config('epsilon=0.1\n').coeff == 'paper'
