from flask import Flask

from config import Config

app = Flask(__name__)
app.config.from_object(Config)
app.logger.setLevel(app.config['LOG_LEVEL'])

from app.Routes import RunRoute, ExperimentRoute, CellRoute
