import qshelf


def test_series_counts_products_agree():
    for k in (2, 3, 4):
        for i in range(1, k + 1):
            s = qshelf.series(k, i, order=18)
            p = qshelf.product_side(k, i, order=18)
            t = qshelf.theta_quotient(k, i, order=18)
            c = [qshelf.count_official(k, i, n) for n in range(19)]
            assert s == p == t == c
            assert s[0] == 1
            assert all(v >= 0 for v in s)


def test_ghosts_and_extension():
    for k in (3, 4):
        for i in range(2, k + 1):
            g = qshelf.series(k, i, j=1, ghost=True, order=15)
            c = [qshelf.count_ghost(k, (k - 1) + i, n) for n in range(16)]
            assert g == c
    # the first ghost is defined as the second official
    assert [qshelf.count_ghost(3, 1, n) for n in range(12)] == qshelf.series(
        3, 2, order=11
    )


def test_h_entries_and_limit():
    entry = qshelf.h_entry(3, 0, 1, 1, 1, order=10)
    assert entry[0] == 1
    counted = [qshelf.count_h(3, 0, 1, 1, 1, n) for n in range(11)]
    assert entry == counted
    assert qshelf.h_limit(3, 0, 1, order=12) == qshelf.series(3, 1, order=12)


def test_dictionary_specialization():
    for k in (2, 3):
        for i in range(1, k + 1):
            got = qshelf.dictionary_series(k, k - i + 1, 2, order=14)
            want = qshelf.series(k, i, j=2, order=14)
            assert got == want
    terms = qshelf.dictionary_terms(3, 2, order=10)
    assert terms[0] == {"a": 0, "b": 0, "c": "1"}
    keys = [(t["b"], t["a"]) for t in terms]
    assert keys == sorted(keys)
    assert all(t["a"] <= t["b"] for t in terms)


def test_verify_reports():
    rep = qshelf.verify_recursion(k_max=3, j_max=3, order=24, jobs=2)
    assert rep["pass"] is True
    assert rep["cells"] > 0
    assert rep["certificate"] is None
    rep = qshelf.verify_eh(k_max=3, j_max=4)
    assert rep["pass"] is True
    rep = qshelf.verify_dictionary(k_max=3, j_max=2, order=20)
    assert rep["pass"] is True


def test_big_coefficients_are_exact_ints():
    deep = qshelf.series(2, 2, order=400)
    assert isinstance(deep[400], int)
    assert deep[400] > 10**6
