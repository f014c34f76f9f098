import numpy as np

from tauclock.output import flatten, format_value, read_csv, write_csv


class TestFormatValue:
    def test_bool_before_int(self):
        assert format_value(True) == 'true'
        assert format_value(np.bool_(False)) == 'false'

    def test_int(self):
        assert format_value(np.int64(7)) == '7'

    def test_float_round_trips(self):
        assert float(format_value(0.1)) == 0.1
        assert format_value(float('nan')) == 'nan'

    def test_complex(self):
        assert format_value(complex(1.5, -2.0)) == '1.5-2j'
        assert format_value(np.complex128(0.0, 3.0)) == '0+3j'

    def test_none_and_lists(self):
        assert format_value(None) == ''
        assert format_value([1, 2]) == '[1, 2]'


class TestFlatten:
    def test_nested_keys(self):
        flat = flatten({'packet': {'p0': 1.0, 'dp': 0.05}, 'kind': 'taudist'})
        assert flat == {'packet.p0': 1.0, 'packet.dp': 0.05, 'kind': 'taudist'}

    def test_lists_stay_whole(self):
        assert flatten({'lattice': {'region': [1, 2]}}) == {'lattice.region': [1, 2]}


class TestCsv:
    def test_header_then_rows(self, tmp_path):
        path = write_csv(tmp_path / 'out' / 'a.csv', {'kind': 'oracle', 'n': 3}, ['x', 'y'], [(1, 0.5), (2, True)])
        lines = path.read_text().splitlines()
        assert lines == ['# kind = oracle', '# n = 3', 'x,y', '1,0.5', '2,true']

    def test_read_back(self, tmp_path):
        path = write_csv(tmp_path / 'a.csv', {'id': 'demo'}, ['tau', 're_A'], [(0.25, -1e-300)])
        metadata, rows = read_csv(path)
        assert metadata == {'id': 'demo'}
        assert float(rows[0]['re_A']) == -1e-300

    def test_identical_inputs_give_identical_bytes(self, tmp_path):
        rows = [(0.1 * k, complex(k, -k)) for k in range(5)]
        first = write_csv(tmp_path / 'a.csv', {'seed': 1}, ['t', 'z'], rows)
        second = write_csv(tmp_path / 'b.csv', {'seed': 1}, ['t', 'z'], rows)
        assert first.read_bytes() == second.read_bytes()
