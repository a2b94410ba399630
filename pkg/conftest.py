"""Pytest opties voor de ExoFabric testsuite"""


def pytest_addoption(parser):
    parser.addoption(
        "--update-goldens",
        action="store_true",
        default=False,
        help="schrijf cookbook/golden/ opnieuw uit de huidige uitvoer",
    )
