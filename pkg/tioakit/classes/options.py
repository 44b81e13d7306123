"""
Options that change how queries are checked.

One CheckOptions object is held by each client,
and plain dictionaries of it are handed to worker processes.
"""

from dataclasses import asdict, dataclass, field


@dataclass
class CheckOptions(object):
    """
    CheckOptions - Object that contains various parameters for checking queries.

    Handlers read the values they need and ignore the rest:

        * reach_prune - Drop product locations the zone graph can not reach
        * oracle - Cross-check every verdict with the region graph oracle
        * jobs - Number of worker processes for query files
    """

    reach_prune: bool = field(default=True)
    oracle: bool = field(default=False)
    jobs: int = field(default=1)

    def asdict(self) -> dict:
        """
        Plain dictionary of our values, CheckOptions(**values) rebuilds us.

        :return: Option values by name
        :rtype: dict
        """

        return asdict(self)
